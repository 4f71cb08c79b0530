#pragma once

// Library side of the `gar` command-line tool. Each command writes its report to
// `out`, warnings to `err`, and returns a summary for programmatic callers.

#include "gar/harness.hpp"
#include "gar/inference.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gar {

struct SeriesRequest {
    double phi = 0.5;
    std::size_t T = 640;
};

/// Writes the grid CSV to out_path, or, when series is set, a single trajectory
/// (phi, T) with a provenance line drawn from RngStream(master_seed, 0).
void cmd_simulate(const ScenarioSpec& spec, const std::filesystem::path& out_path, std::size_t workers,
                  const std::optional<SeriesRequest>& series, std::ostream& err);

/// Report keys, in output order.
inline const std::vector<std::string> kFitReportKeys{"space", "T", "phi_hat", "r_squared", "frechet_variance",
                                                      "iterations"};

struct FitSummary {
    SpaceTag space = SpaceTag::Scalar;
    std::size_t T = 0;
    double phi_hat = 0.0;
    double r_squared = 0.0;
    double frechet_variance = 0.0;
    std::size_t iterations = 0;
};

/// Fits the series and writes mu_hat (a one-point series) to mean_out.
FitSummary cmd_fit(const std::filesystem::path& series_path, std::optional<SpaceTag> space,
                   const std::filesystem::path& mean_out, std::ostream& out);

struct TestSummary {
    TestResult result;
    NullMoments null;
    std::size_t B = 0;
};

/// Permutation test plus the D_T null moments, both drawn from RngStream(seed, 1).
TestSummary cmd_test(const std::filesystem::path& series_path, std::optional<SpaceTag> space, std::size_t B,
                     double alpha, TestVariant variant, std::uint64_t seed, PValueMode mode, std::ostream& out);

inline constexpr double kSceLow = -36.0;
inline constexpr double kSceHigh = 36.0;

struct SceRecord {
    std::string month;  ///< YYYY-MM
    double median_belief = 0.0;
};

/// Parses a `month,median_belief` CSV. Throws ParseError with the line number.
std::vector<SceRecord> read_sce_csv(std::istream& in);

struct IngestSummary {
    std::vector<std::string> kept;
    std::vector<std::string> skipped;
};

/// Groups records by month (chronologically), turns each month into a quantile
/// function on [-36, 36], and writes the series. Months with fewer than two
/// records or zero spread are skipped with a warning.
IngestSummary cmd_ingest_sce(const std::filesystem::path& csv_path, std::size_t m,
                             const std::filesystem::path& out_path, std::ostream& err);

struct AnalysisPaths {
    std::filesystem::path report;
    std::filesystem::path residuals;
    std::filesystem::path permuted;
};

/// <dir>/<stem>.report.txt, <stem>.residuals.csv and <stem>.permuted.csv.
AnalysisPaths analysis_paths(const std::filesystem::path& series_path, const std::filesystem::path& out_dir);

struct AnalysisSummary {
    FitSummary fit;
    TestResult test;
    double mean_gar_residual = 0.0;
    double mean_null_residual = 0.0;
    AnalysisPaths paths;
};

/// fit, DT permutation test, R^2 and residuals. The report is also echoed to out.
AnalysisSummary cmd_analyze(const std::filesystem::path& series_path, std::optional<SpaceTag> space, std::size_t B,
                            double alpha, std::uint64_t seed, const std::filesystem::path& out_dir,
                            std::ostream& out);

struct DiagnoseSummary {
    std::vector<double> estimates;  ///< t = 1..t_max
    double rate = 0.0;
};

/// Coupled-chain contraction estimate for the scenario's space and noise, started from
///   scalar x = 2, x0 = 1;  wasserstein x = mu, x0 = uniform quantile;  spd x = I, x0 = 2I.
DiagnoseSummary cmd_diagnose(const ScenarioSpec& spec, double phi, double alpha_moment, std::size_t t_max,
                             std::size_t reps, std::ostream& out);

}  // namespace gar
