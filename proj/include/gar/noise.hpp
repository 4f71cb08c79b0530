#pragma once

// Unbiased random noise maps for the three simulation scenarios, plus Monte Carlo
// diagnostics for unbiasedness and the monotonicity condition.
//
// Every map consumes a fixed number of draws per application, independent of the
// input point. Coupled runs (same stream, different starting points) therefore see
// identical noise realizations.

#include "gar/error.hpp"
#include "gar/metric_core.hpp"
#include "gar/rng.hpp"
#include "gar/scalar_space.hpp"
#include "gar/space.hpp"
#include "gar/spd_space.hpp"
#include "gar/wasserstein_space.hpp"

#include <cmath>
#include <concepts>
#include <cstddef>
#include <variant>
#include <vector>

namespace gar {

template <class N, class S>
concept NoiseFor = HadamardSpace<S> && requires(const N& noise, const S& space, const typename S::Point& x,
                                                RngStream& rng) {
    { noise.apply(space, x, rng) } -> std::same_as<typename S::Point>;
};

/// eps(x) = (1 + eta) x, eta ~ N(0, sigma^2).
ScalarPoint apply_multiplicative(const ScalarPoint& x, double sigma, RngStream& rng);

/// Uniform draw from {-max_freq, ..., max_freq} \ {0}.
int sample_transport_frequency(RngStream& rng, int max_freq = 4);

/// eta_k(x) = x - sin(pi k x) / |pi k|; strictly increasing on [0, 1] with fixed endpoints.
double transport_map(double x, int k);

/// Push-forward by eta_k, applied by composition on the quantile values.
/// Throws ArgumentError when k == 0 or the support is not inside [0, 1].
QuantileFunction apply_transport(const QuantileFunction& q, int k);

/// Congruence L_eps X L_eps^T, computed as the Cholesky factor product L_eps L.
/// Strict lower entries of L_eps ~ N(0, sigma_low^2), log-diagonal ~ N(0, sigma_diag^2).
SpdPoint apply_congruence(const SpdPoint& x, double sigma_low, double sigma_diag, RngStream& rng);

struct MultiplicativeNoise {
    double sigma = 0.25;

    ScalarPoint apply(const ScalarSpace&, const ScalarPoint& x, RngStream& rng) const {
        return apply_multiplicative(x, sigma, rng);
    }
};

struct TransportNoise {
    int max_freq = 4;

    QuantileFunction apply(const WassersteinSpace&, const QuantileFunction& q, RngStream& rng) const {
        return apply_transport(q, sample_transport_frequency(rng, max_freq));
    }
};

struct CongruenceNoise {
    double sigma_low = 0.5;
    double sigma_diag = 0.2;

    SpdPoint apply(const SpdSpace&, const SpdPoint& x, RngStream& rng) const {
        return apply_congruence(x, sigma_low, sigma_diag, rng);
    }
};

/// Degenerate noise: eps(x) = x. Consumes no draws.
struct IdentityNoise {
    template <HadamardSpace S>
    typename S::Point apply(const S&, const typename S::Point& x, RngStream&) const {
        return x;
    }
};

using NoiseModel = std::variant<MultiplicativeNoise, TransportNoise, CongruenceNoise>;

/// Throws ArgumentError unless sigma > 0, max_freq >= 1, sigma_low > 0, sigma_diag > 0.
void validate_noise(const NoiseModel& noise);

/// d(frechet_mean{eps_i(w)}, w) over n independent applications.
template <HadamardSpace S, NoiseFor<S> N>
double mc_unbiasedness(const S& space, const N& noise, const typename S::Point& w, std::size_t n, RngStream& rng) {
    if (n < 100) throw ArgumentError("mc_unbiasedness: need n >= 100");
    std::vector<typename S::Point> draws;
    draws.reserve(n);
    for (std::size_t i = 0; i < n; ++i) draws.push_back(noise.apply(space, w, rng));
    return space.distance(space.frechet_mean(std::span<const typename S::Point>(draws)), w);
}

struct MonotonicityEstimate {
    double lhs_mean = 0.0;  ///< E d(eps(x), z)^2
    double rhs_mean = 0.0;  ///< E d(eps(y), z)^2
    double diff_se = 0.0;   ///< standard error of the paired difference rhs - lhs

    /// rhs_mean - lhs_mean exceeds margin_se standard errors.
    bool ordered(double margin_se = 3.0) const { return rhs_mean - lhs_mean > margin_se * diff_se; }
};

/// Monte Carlo estimate of both sides of d(x,z) < d(y,z) => E d(eps(x),z)^2 < E d(eps(y),z)^2.
/// The two sides share noise draws (common random numbers).
template <HadamardSpace S, NoiseFor<S> N>
MonotonicityEstimate mc_monotonicity(const S& space, const N& noise, const typename S::Point& x,
                                     const typename S::Point& y, const typename S::Point& z, std::size_t n,
                                     RngStream& rng) {
    if (n < 1000) throw ArgumentError("mc_monotonicity: need n >= 1000");
    if (space.distance(x, z) > space.distance(y, z)) {
        throw ArgumentError("mc_monotonicity: requires d(x, z) <= d(y, z)");
    }
    double sum_l = 0.0, sum_r = 0.0, sum_d = 0.0, sum_d2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        RngStream shared = rng.child(i);
        RngStream copy = shared;
        const double l = space.distance_sq(noise.apply(space, x, shared), z);
        const double r = space.distance_sq(noise.apply(space, y, copy), z);
        sum_l += l;
        sum_r += r;
        sum_d += r - l;
        sum_d2 += (r - l) * (r - l);
    }
    const auto nn = static_cast<double>(n);
    const double mean_d = sum_d / nn;
    const double var_d = std::max(0.0, (sum_d2 - nn * mean_d * mean_d) / (nn - 1.0));
    return {sum_l / nn, sum_r / nn, std::sqrt(var_d / nn)};
}

}  // namespace gar
