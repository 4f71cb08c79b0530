#pragma once

// Monte Carlo experiment grid: one GAR(1) trajectory per (phi, T, rep) cell,
// fitted and tested, reported as one CSV row per cell.

#include "gar/noise.hpp"
#include "gar/series_io.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace gar {

struct ScenarioSpec {
    SpaceTag space = SpaceTag::Scalar;
    std::vector<double> phi_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 1.0};
    std::vector<std::size_t> T_grid{40, 80, 160, 320, 640};
    std::size_t reps = 200;
    std::size_t B = 200;
    double alpha = 0.05;
    std::uint64_t master_seed = 0;

    double sigma = 0.25;       // scalar
    int max_freq = 4;          // wasserstein
    std::size_t m = kDefaultGridSize;
    double sigma_low = 0.5;    // spd
    double sigma_diag = 0.2;
    std::size_t p = 10;

    std::size_t burn_in = 100;
    bool timing = false;  ///< fill wall_ms; makes the CSV non-reproducible

    /// Throws ArgumentError on empty grids, reps == 0, phi outside [0, 1], T < 3, and so on.
    void validate() const;
    bool includes_unit_phi() const;
};

/// Applies reps = 1000 and B = 1000.
void apply_full_scale(ScenarioSpec& spec);

inline constexpr std::string_view kGridCsvHeader =
    "space,phi,T,rep,mean_error,phi_error,d_stat,p_value,reject,seed,wall_ms";

struct GridRow {
    SpaceTag space = SpaceTag::Scalar;
    double phi = 0.0;
    std::size_t T = 0;
    std::size_t rep = 0;
    double mean_error = 0.0;
    double phi_error = 0.0;
    double d_stat = 0.0;
    double p_value = 1.0;
    bool reject = false;
    std::uint64_t seed = 0;
    double wall_ms = 0.0;
};

std::string format_grid_row(const GridRow& row);

/// Seed of a grid cell. Simulation draws from RngStream(seed, 0), the permutation test from RngStream(seed, 1).
std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t phi_index, std::size_t T_index, std::size_t rep);

/// Runs f(space, mu, noise) with the scenario's hard-coded mean and noise model.
///   scalar       mu = 1, multiplicative noise
///   wasserstein  mu = truncated N(0, 1) on [0, 1], transport noise
///   spd          mu = identity, congruence noise
template <class F>
decltype(auto) with_scenario(const ScenarioSpec& spec, F&& f) {
    switch (spec.space) {
        case SpaceTag::Scalar:
            return f(ScalarSpace{}, ScalarPoint{1.0}, MultiplicativeNoise{spec.sigma});
        case SpaceTag::Wasserstein:
            return f(WassersteinSpace(spec.m, 0.0, 1.0), truncated_normal_grid(spec.m), TransportNoise{spec.max_freq});
        case SpaceTag::Spd:
            break;
    }
    return f(SpdSpace(spec.p), SpdPoint(spec.p), CongruenceNoise{spec.sigma_low, spec.sigma_diag});
}

GridRow run_cell(const ScenarioSpec& spec, std::size_t phi_index, std::size_t T_index, std::size_t rep);

/// All cells in canonical (phi, T, rep) order, computed by up to `workers` threads
/// (0 means hardware concurrency). The result does not depend on `workers`.
std::vector<GridRow> run_grid(const ScenarioSpec& spec, std::size_t workers = 0);

void write_grid_csv(std::ostream& out, const std::vector<GridRow>& rows);

/// Runs fn(0..count-1) on a bounded pool of threads and rethrows the first failure.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn);

}  // namespace gar
