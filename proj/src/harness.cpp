#include "gar/harness.hpp"

#include "gar/inference.hpp"
#include "gar/process.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

namespace gar {

void ScenarioSpec::validate() const {
    if (phi_grid.empty()) throw ArgumentError("phi grid is empty");
    if (T_grid.empty()) throw ArgumentError("T grid is empty");
    if (reps < 1) throw ArgumentError("reps must be >= 1");
    if (B < 1) throw ArgumentError("B must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");
    for (double phi : phi_grid) {
        if (!(phi >= 0.0 && phi <= 1.0)) throw ArgumentError("phi values must lie in [0, 1]");
    }
    for (std::size_t T : T_grid) {
        if (T < 3) throw ArgumentError("T values must be >= 3");
    }
    if (m < 2) throw ArgumentError("m must be >= 2");
    if (p < 1) throw ArgumentError("p must be >= 1");
    validate_noise(MultiplicativeNoise{sigma});
    validate_noise(TransportNoise{max_freq});
    validate_noise(CongruenceNoise{sigma_low, sigma_diag});
}

bool ScenarioSpec::includes_unit_phi() const {
    return std::find(phi_grid.begin(), phi_grid.end(), 1.0) != phi_grid.end();
}

void apply_full_scale(ScenarioSpec& spec) {
    spec.reps = 1000;
    spec.B = 1000;
}

std::string format_grid_row(const GridRow& r) {
    std::string s;
    s += to_string(r.space);
    s += ',' + format_double(r.phi);
    s += ',' + std::to_string(r.T);
    s += ',' + std::to_string(r.rep);
    s += ',' + format_double(r.mean_error);
    s += ',' + format_double(r.phi_error);
    s += ',' + format_double(r.d_stat);
    s += ',' + format_double(r.p_value);
    s += r.reject ? ",1" : ",0";
    s += ',' + std::to_string(r.seed);
    s += ',' + format_double(r.wall_ms);
    return s;
}

std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t phi_index, std::size_t T_index, std::size_t rep) {
    return mix64(master_seed, mix64(mix64(phi_index, T_index), rep));
}

GridRow run_cell(const ScenarioSpec& spec, std::size_t phi_index, std::size_t T_index, std::size_t rep) {
    const auto start = std::chrono::steady_clock::now();
    GridRow row;
    row.space = spec.space;
    row.phi = spec.phi_grid.at(phi_index);
    row.T = spec.T_grid.at(T_index);
    row.rep = rep;
    row.seed = cell_seed(spec.master_seed, phi_index, T_index, rep);

    with_scenario(spec, [&](const auto& space, const auto& mu, const auto& noise) {
        using S = std::decay_t<decltype(space)>;
        using N = std::decay_t<decltype(noise)>;
        GarConfig<S, N> cfg{space, mu, row.phi, noise, row.T, spec.burn_in, RngStream(row.seed, 0)};
        const Trajectory<S> traj = simulate(cfg);
        const std::span<const typename S::Point> pts(traj.points);

        const auto mu_hat = fit_mean(space, pts);
        row.mean_error = space.distance(mu_hat, mu);
        row.phi_error = std::abs(fit_phi(space, pts, mu_hat) - row.phi);
        const TestResult test =
            permutation_test(space, pts, spec.B, spec.alpha, TestVariant::DT, RngStream(row.seed, 1));
        row.d_stat = test.statistic;
        row.p_value = test.p_value;
        row.reject = test.reject;
    });

    if (spec.timing) {
        row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return row;
}

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, std::max<std::size_t>(count, 1));

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < count && !failed; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (error) std::rethrow_exception(error);
}

std::vector<GridRow> run_grid(const ScenarioSpec& spec, std::size_t workers) {
    spec.validate();
    const std::size_t nT = spec.T_grid.size();
    const std::size_t cells = spec.phi_grid.size() * nT * spec.reps;
    std::vector<GridRow> rows(cells);
    parallel_for(cells, workers, [&](std::size_t i) {
        const std::size_t rep = i % spec.reps;
        const std::size_t T_index = (i / spec.reps) % nT;
        const std::size_t phi_index = i / (spec.reps * nT);
        rows[i] = run_cell(spec, phi_index, T_index, rep);
    });
    return rows;
}

void write_grid_csv(std::ostream& out, const std::vector<GridRow>& rows) {
    out << kGridCsvHeader << '\n';
    for (const auto& r : rows) out << format_grid_row(r) << '\n';
}

}  // namespace gar
