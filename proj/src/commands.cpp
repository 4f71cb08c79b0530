#include "gar/commands.hpp"

#include "gar/density.hpp"
#include "gar/process.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>

namespace gar {
namespace {

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

template <class S>
constexpr SpaceTag tag_of() {
    if constexpr (std::is_same_v<S, ScalarSpace>) {
        return SpaceTag::Scalar;
    } else if constexpr (std::is_same_v<S, WassersteinSpace>) {
        return SpaceTag::Wasserstein;
    } else {
        return SpaceTag::Spd;
    }
}

template <class S>
FitSummary summarize(const SeriesOf<S>& s, const FitResult<S>& f) {
    FitSummary r;
    r.space = tag_of<S>();
    r.T = s.points.size();
    r.phi_hat = f.phi_hat;
    r.r_squared = f.r_squared;
    r.frechet_variance = f.frechet_variance;
    r.iterations = f.iterations;
    return r;
}

void print_fit(std::ostream& out, const FitSummary& f) {
    out << "space=" << to_string(f.space) << '\n'
        << "T=" << f.T << '\n'
        << "phi_hat=" << format_double(f.phi_hat) << '\n'
        << "r_squared=" << format_double(f.r_squared) << '\n'
        << "frechet_variance=" << format_double(f.frechet_variance) << '\n'
        << "iterations=" << f.iterations << '\n';
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
}

bool valid_month(std::string_view m) {
    if (m.size() != 7 || m[4] != '-') return false;
    for (std::size_t i : {0, 1, 2, 3, 5, 6}) {
        if (m[i] < '0' || m[i] > '9') return false;
    }
    const int month = (m[5] - '0') * 10 + (m[6] - '0');
    return month >= 1 && month <= 12;
}

}  // namespace

void cmd_simulate(const ScenarioSpec& spec, const std::filesystem::path& out_path, std::size_t workers,
                  const std::optional<SeriesRequest>& series, std::ostream& err) {
    spec.validate();
    if (series) {
        if (series->phi == 1.0) err << "warning: phi = 1 gives a non-stationary process\n";
        const Series s = with_scenario(spec, [&](const auto& space, const auto& mu, const auto& noise) -> Series {
            using S = std::decay_t<decltype(space)>;
            using N = std::decay_t<decltype(noise)>;
            GarConfig<S, N> cfg{space, mu, series->phi, noise, series->T, spec.burn_in,
                                RngStream(spec.master_seed, 0)};
            return SeriesOf<S>{space, simulate(cfg).points};
        });
        write_series_file(out_path, s, Provenance{spec.space, series->phi, series->T, spec.master_seed});
        return;
    }
    if (spec.includes_unit_phi()) err << "warning: phi grid includes 1, where the process is not stationary\n";
    const std::vector<GridRow> rows = run_grid(spec, workers);
    std::ofstream out = open_output(out_path);
    write_grid_csv(out, rows);
    finish(out, out_path);
}

FitSummary cmd_fit(const std::filesystem::path& series_path, std::optional<SpaceTag> space,
                   const std::filesystem::path& mean_out, std::ostream& out) {
    const Series series = read_series_file(series_path, space);
    const FitSummary summary = std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s.space)>;
            const auto res = fit(s.space, std::span<const typename S::Point>(s.points));
            write_series_file(mean_out, Series(SeriesOf<S>{s.space, {res.mu_hat}}));
            return summarize(s, res);
        },
        series);
    print_fit(out, summary);
    return summary;
}

TestSummary cmd_test(const std::filesystem::path& series_path, std::optional<SpaceTag> space, std::size_t B,
                     double alpha, TestVariant variant, std::uint64_t seed, PValueMode mode, std::ostream& out) {
    const Series series = read_series_file(series_path, space);
    TestSummary summary;
    summary.B = B;
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s.space)>;
            const std::span<const typename S::Point> pts(s.points);
            const RngStream rng(seed, 1);
            summary.result = permutation_test(s.space, pts, B, alpha, variant, rng, mode);
            summary.null = estimate_null_moments(s.space, pts, std::max<std::size_t>(B, 2), rng);
        },
        series);
    out << "statistic=" << format_double(summary.result.statistic) << '\n'
        << "p_value=" << format_double(summary.result.p_value) << '\n'
        << "reject=" << (summary.result.reject ? 1 : 0) << '\n'
        << "B=" << B << '\n'
        << "alpha=" << format_double(alpha) << '\n'
        << "variant=" << variant_name(variant) << '\n'
        << "null_mean=" << format_double(summary.null.mean_hat) << '\n'
        << "null_sd=" << format_double(std::sqrt(summary.null.var_hat)) << '\n';
    return summary;
}

std::vector<SceRecord> read_sce_csv(std::istream& in) {
    std::vector<SceRecord> records;
    std::string line;
    std::size_t number = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++number;
        const std::string_view text = trim(line);
        if (text.empty()) continue;
        if (!header) {
            if (text != "month,median_belief") {
                throw ParseError("expected header 'month,median_belief'", number);
            }
            header = true;
            continue;
        }
        const auto comma = text.find(',');
        if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
            throw ParseError("expected two comma-separated fields", number);
        }
        const std::string_view month = trim(text.substr(0, comma));
        const std::string_view value = trim(text.substr(comma + 1));
        if (!valid_month(month)) throw ParseError("month must be YYYY-MM: '" + std::string(month) + "'", number);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(v)) {
            throw ParseError("median_belief is not a number: '" + std::string(value) + "'", number);
        }
        if (v < kSceLow || v > kSceHigh) throw ParseError("median_belief outside [-36, 36]", number);
        records.push_back({std::string(month), v});
    }
    if (!header) throw ParseError("empty file, expected header 'month,median_belief'", 1);
    return records;
}

IngestSummary cmd_ingest_sce(const std::filesystem::path& csv_path, std::size_t m,
                             const std::filesystem::path& out_path, std::ostream& err) {
    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open '" + csv_path.string() + "'");
    std::map<std::string, std::vector<double>> months;
    for (auto& r : read_sce_csv(in)) months[r.month].push_back(r.median_belief);

    IngestSummary summary;
    QuantileSeries series{WassersteinSpace(m, kSceLow, kSceHigh), {}};
    for (const auto& [month, beliefs] : months) {
        if (beliefs.size() < 2) {
            summary.skipped.push_back(month);
            continue;
        }
        try {
            series.points.push_back(density_to_quantile(beliefs, kSceLow, kSceHigh, m));
            summary.kept.push_back(month);
        } catch (const DegenerateInputError&) {
            summary.skipped.push_back(month);
        }
    }
    if (!summary.skipped.empty()) {
        err << "warning: skipped " << summary.skipped.size() << " month(s) with fewer than 2 records or no spread:";
        for (const auto& mo : summary.skipped) err << ' ' << mo;
        err << '\n';
    }
    if (series.points.empty()) throw DegenerateInputError("no usable months in '" + csv_path.string() + "'");
    write_series_file(out_path, series);
    return summary;
}

AnalysisPaths analysis_paths(const std::filesystem::path& series_path, const std::filesystem::path& out_dir) {
    const std::string stem = series_path.stem().string();
    return {out_dir / (stem + ".report.txt"), out_dir / (stem + ".residuals.csv"),
            out_dir / (stem + ".permuted.csv")};
}

AnalysisSummary cmd_analyze(const std::filesystem::path& series_path, std::optional<SpaceTag> space, std::size_t B,
                            double alpha, std::uint64_t seed, const std::filesystem::path& out_dir,
                            std::ostream& out) {
    const Series series = read_series_file(series_path, space);
    AnalysisSummary summary;
    summary.paths = analysis_paths(series_path, out_dir);
    ResidualReport resid;
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s.space)>;
            const std::span<const typename S::Point> pts(s.points);
            const auto res = fit(s.space, pts);
            summary.fit = summarize(s, res);
            summary.test = permutation_test(s.space, pts, B, alpha, TestVariant::DT, RngStream(seed, 1));
            resid = residuals(s.space, pts, res.mu_hat, res.phi_hat);
        },
        series);
    summary.mean_gar_residual = mean_of(resid.gar_residuals);
    summary.mean_null_residual = mean_of(resid.null_residuals);

    std::ofstream report = open_output(summary.paths.report);
    for (std::ostream* o : {static_cast<std::ostream*>(&report), &out}) {
        print_fit(*o, summary.fit);
        *o << "d_stat=" << format_double(summary.test.statistic) << '\n'
           << "p_value=" << format_double(summary.test.p_value) << '\n'
           << "reject=" << (summary.test.reject ? 1 : 0) << '\n'
           << "B=" << B << '\n'
           << "alpha=" << format_double(alpha) << '\n'
           << "variant=" << variant_name(TestVariant::DT) << '\n'
           << "mean_gar_residual=" << format_double(summary.mean_gar_residual) << '\n'
           << "mean_null_residual=" << format_double(summary.mean_null_residual) << '\n';
    }
    finish(report, summary.paths.report);

    std::ofstream rcsv = open_output(summary.paths.residuals);
    rcsv << "t,gar_residual,null_residual\n";
    for (std::size_t t = 0; t < resid.gar_residuals.size(); ++t) {
        rcsv << t + 1 << ',' << format_double(resid.gar_residuals[t]) << ','
             << format_double(resid.null_residuals[t]) << '\n';
    }
    finish(rcsv, summary.paths.residuals);

    std::ofstream pcsv = open_output(summary.paths.permuted);
    pcsv << "b,d_stat\n";
    for (std::size_t b = 0; b < summary.test.permuted.size(); ++b) {
        pcsv << b << ',' << format_double(summary.test.permuted[b]) << '\n';
    }
    finish(pcsv, summary.paths.permuted);
    return summary;
}

DiagnoseSummary cmd_diagnose(const ScenarioSpec& spec, double phi, double alpha_moment, std::size_t t_max,
                             std::size_t reps, std::ostream& out) {
    spec.validate();
    DiagnoseSummary summary;
    summary.estimates = with_scenario(spec, [&](const auto& space, const auto& mu, const auto& noise) {
        using S = std::decay_t<decltype(space)>;
        typename S::Point x = mu;
        typename S::Point x0 = mu;
        if constexpr (std::is_same_v<S, ScalarSpace>) {
            x = ScalarPoint{2.0};
        } else if constexpr (std::is_same_v<S, WassersteinSpace>) {
            x0.values = midpoint_grid(spec.m);
        } else {
            for (double& v : x0.log_diag()) v = std::log(2.0);
        }
        return contraction_diagnostic(space, noise, mu, phi, x, x0, t_max, reps, alpha_moment,
                                      RngStream(spec.master_seed, 2));
    });
    summary.rate = fit_geometric_rate(summary.estimates);
    out << "t,estimate\n";
    for (std::size_t t = 0; t < summary.estimates.size(); ++t) {
        out << t + 1 << ',' << format_double(summary.estimates[t]) << '\n';
    }
    out << "rate=" << format_double(summary.rate) << '\n';
    return summary;
}

}  // namespace gar
