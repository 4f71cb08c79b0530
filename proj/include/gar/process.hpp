#pragma once

// GAR(1) data-generating process: X_{t+1} = eps_{t+1}(geodesic(mu, X_t, phi)).

#include "gar/error.hpp"
#include "gar/noise.hpp"
#include "gar/rng.hpp"
#include "gar/space.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace gar {

inline constexpr std::size_t kDefaultBurnIn = 100;

template <HadamardSpace S, NoiseFor<S> N>
struct GarConfig {
    S space;
    typename S::Point mu;
    double phi = 0.0;
    N noise;
    std::size_t T = 2;
    std::size_t burn_in = kDefaultBurnIn;
    RngStream rng{0, 0};
};

template <HadamardSpace S>
struct Trajectory {
    std::vector<typename S::Point> points;
    double phi = 0.0;
    std::size_t burn_in = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

template <HadamardSpace S, NoiseFor<S> N>
typename S::Point iterate_once(const S& space, const N& noise, const typename S::Point& mu, double phi,
                               const typename S::Point& x, RngStream& rng) {
    if (!(phi >= 0.0 && phi <= 1.0)) throw ArgumentError("iterate_once: phi must lie in [0, 1]");
    return noise.apply(space, space.geodesic(mu, x, phi), rng);
}

/// Starts at X_0 = mu, runs burn_in + T steps and keeps the last T points.
template <HadamardSpace S, NoiseFor<S> N>
Trajectory<S> simulate(const GarConfig<S, N>& cfg) {
    if (!(cfg.phi >= 0.0 && cfg.phi <= 1.0)) throw ArgumentError("simulate: phi must lie in [0, 1]");
    if (cfg.T < 2) throw ArgumentError("simulate: T must be at least 2");
    cfg.space.validate(cfg.mu);

    RngStream rng = cfg.rng;
    Trajectory<S> traj;
    traj.phi = cfg.phi;
    traj.burn_in = cfg.burn_in;
    traj.seed = cfg.rng.seed();
    traj.stream_id = cfg.rng.stream_id();
    traj.points.reserve(cfg.T);

    typename S::Point x = cfg.mu;
    for (std::size_t i = 0; i < cfg.burn_in + cfg.T; ++i) {
        x = iterate_once(cfg.space, cfg.noise, cfg.mu, cfg.phi, x, rng);
        if (i >= cfg.burn_in) traj.points.push_back(x);
    }
    return traj;
}

/// E d(X_t(x), X_t(x0))^alpha for t = 1..t_max, where both chains are driven by
/// the same noise realizations (coupling by stream copy) over reps replications.
template <HadamardSpace S, NoiseFor<S> N>
std::vector<double> contraction_diagnostic(const S& space, const N& noise, const typename S::Point& mu, double phi,
                                           const typename S::Point& x, const typename S::Point& x0,
                                           std::size_t t_max, std::size_t reps, double alpha,
                                           const RngStream& rng) {
    if (t_max < 1) throw ArgumentError("contraction_diagnostic: t_max must be >= 1");
    if (reps < 1) throw ArgumentError("contraction_diagnostic: reps must be >= 1");
    if (!(alpha >= 1.0)) throw ArgumentError("contraction_diagnostic: alpha must be >= 1");
    if (space.distance(x, x0) == 0.0) throw ArgumentError("contraction_diagnostic: starting points coincide");

    std::vector<double> sums(t_max, 0.0);
    for (std::size_t r = 0; r < reps; ++r) {
        RngStream a = rng.child(r);
        RngStream b = a;
        typename S::Point xa = x;
        typename S::Point xb = x0;
        for (std::size_t t = 0; t < t_max; ++t) {
            xa = iterate_once(space, noise, mu, phi, xa, a);
            xb = iterate_once(space, noise, mu, phi, xb, b);
            sums[t] += std::pow(space.distance(xa, xb), alpha);
        }
    }
    for (double& s : sums) s /= static_cast<double>(reps);
    return sums;
}

/// exp of the least-squares slope of log(estimate) against t = 1..n. Returns 0 if
/// any estimate is zero (the chains have merged).
double fit_geometric_rate(const std::vector<double>& estimates);

}  // namespace gar
