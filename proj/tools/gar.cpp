#include "gar/commands.hpp"
#include "gar/error.hpp"
#include "gar/kernels.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

std::optional<gar::SpaceTag> optional_space(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return gar::parse_space_tag(s);
}

void add_scenario_options(CLI::App* cmd, gar::ScenarioSpec& spec, std::string& space) {
    cmd->add_option("--space", space, "scalar, wasserstein or spd")->required();
    cmd->add_option("--seed", spec.master_seed, "master seed");
    cmd->add_option("--sigma", spec.sigma, "scalar noise sd");
    cmd->add_option("--max-freq", spec.max_freq, "transport noise frequency bound");
    cmd->add_option("--m", spec.m, "quantile grid size");
    cmd->add_option("--sigma-low", spec.sigma_low, "spd noise sd, strict lower part");
    cmd->add_option("--sigma-diag", spec.sigma_diag, "spd noise sd, log diagonal");
    cmd->add_option("--p", spec.p, "spd dimension");
    cmd->add_option("--burn-in", spec.burn_in, "discarded initial steps");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GAR(1) geodesic autoregression in Hadamard spaces"};
    app.require_subcommand(1);
    std::string simd;
    app.add_option("--simd", simd, "force kernel backend: scalar or avx2");

    gar::ScenarioSpec spec;
    std::string space;
    std::string out;
    std::size_t workers = 0;
    bool full_scale = false;
    std::optional<double> series_phi;
    std::optional<std::size_t> series_T;

    auto* sim = app.add_subcommand("simulate", "run the Monte Carlo grid, or emit one trajectory");
    add_scenario_options(sim, spec, space);
    sim->add_option("--out", out, "output CSV (or series file with --phi)")->required();
    sim->add_option("--phi-grid", spec.phi_grid, "comma separated")->delimiter(',');
    sim->add_option("--T-grid", spec.T_grid, "comma separated")->delimiter(',');
    sim->add_option("--reps", spec.reps);
    sim->add_option("--B", spec.B);
    sim->add_option("--alpha", spec.alpha);
    sim->add_flag("--paper-scale", full_scale, "reps = 1000, B = 1000");
    sim->add_option("--workers", workers, "0 = hardware concurrency");
    sim->add_flag("--timing", spec.timing, "record wall_ms (output no longer reproducible)");
    sim->add_option("--phi", series_phi, "write a single trajectory with this phi");
    sim->add_option("--T", series_T, "length of the single trajectory");

    std::string series_path;
    std::string mean_out;
    auto* fit = app.add_subcommand("fit", "fit mean and concentration to a series file");
    fit->add_option("series", series_path)->required()->check(CLI::ExistingFile);
    fit->add_option("--space", space);
    fit->add_option("--mean-out", mean_out, "where to write the fitted mean");

    std::size_t B = 200;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    std::string variant = "DT";
    bool exact = false;
    auto* test = app.add_subcommand("test", "permutation test of serial independence");
    test->add_option("series", series_path)->required()->check(CLI::ExistingFile);
    test->add_option("--space", space);
    test->add_option("--B", B);
    test->add_option("--alpha", alpha);
    test->add_option("--seed", seed);
    test->add_option("--variant", variant)->check(CLI::IsMember({"DT", "PhiHat"}));
    test->add_flag("--exact", exact, "p-value (1 + count) / (1 + B)");

    std::string csv_path;
    std::size_t m = gar::kDefaultGridSize;
    auto* ingest = app.add_subcommand("ingest-sce", "monthly belief CSV to a quantile series");
    ingest->add_option("csv", csv_path)->required()->check(CLI::ExistingFile);
    ingest->add_option("--m", m);
    ingest->add_option("--out", out)->required();

    std::string out_dir = ".";
    auto* analyze = app.add_subcommand("analyze", "fit, test and residual bundle");
    analyze->add_option("series", series_path)->required()->check(CLI::ExistingFile);
    analyze->add_option("--space", space);
    analyze->add_option("--B", B);
    analyze->add_option("--alpha", alpha);
    analyze->add_option("--seed", seed);
    analyze->add_option("--out", out_dir, "output directory");

    double phi = 0.5;
    double alpha_moment = 2.0;
    std::size_t t_max = 10;
    std::size_t reps = 1000;
    auto* diagnose = app.add_subcommand("diagnose", "coupled-chain contraction estimate");
    add_scenario_options(diagnose, spec, space);
    diagnose->add_option("--phi", phi);
    diagnose->add_option("--alpha-moment", alpha_moment);
    diagnose->add_option("--t-max", t_max);
    diagnose->add_option("--reps", reps);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simd == "scalar") {
            gar::kernels::set_backend(gar::kernels::Backend::Scalar);
        } else if (simd == "avx2") {
            gar::kernels::set_backend(gar::kernels::Backend::Avx2);
        } else if (!simd.empty()) {
            throw gar::ArgumentError("--simd must be scalar or avx2");
        }

        if (*sim) {
            spec.space = gar::parse_space_tag(space);
            if (full_scale) gar::apply_full_scale(spec);
            std::optional<gar::SeriesRequest> request;
            if (series_phi || series_T) {
                request = gar::SeriesRequest{};
                if (series_phi) request->phi = *series_phi;
                if (series_T) request->T = *series_T;
            }
            gar::cmd_simulate(spec, out, workers, request, std::cerr);
        } else if (*fit) {
            std::filesystem::path mean_path = mean_out;
            if (mean_out.empty()) {
                const std::filesystem::path p(series_path);
                mean_path = p.parent_path() / (p.stem().string() + ".mean.txt");
            }
            gar::cmd_fit(series_path, optional_space(space), mean_path, std::cout);
        } else if (*test) {
            gar::cmd_test(series_path, optional_space(space), B, alpha,
                          variant == "DT" ? gar::TestVariant::DT : gar::TestVariant::PhiHat, seed,
                          exact ? gar::PValueMode::Exact : gar::PValueMode::Plain, std::cout);
        } else if (*ingest) {
            const auto s = gar::cmd_ingest_sce(csv_path, m, out, std::cerr);
            std::cout << "months=" << s.kept.size() << "\nskipped=" << s.skipped.size() << '\n';
        } else if (*analyze) {
            gar::cmd_analyze(series_path, optional_space(space), B, alpha, seed, out_dir, std::cout);
        } else if (*diagnose) {
            spec.space = gar::parse_space_tag(space);
            gar::cmd_diagnose(spec, phi, alpha_moment, t_max, reps, std::cout);
        }
    } catch (const gar::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
