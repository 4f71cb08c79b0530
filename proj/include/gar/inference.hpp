#pragma once

// Estimation and testing for GAR(1) trajectories: the Frechet mean, the
// concentration parameter (golden-section minimization of the one-step risk),
// the consecutive-distance statistic with permutation p-values, bootstrap null
// moments, and the metric coefficient of determination.
//
// Functions taking a generic random-access range accept either the trajectory
// itself or a permuted view of it (see permuted()).

#include "gar/error.hpp"
#include "gar/golden_section.hpp"
#include "gar/metric_core.hpp"
#include "gar/rng.hpp"
#include "gar/scalar_space.hpp"
#include "gar/space.hpp"

#include <algorithm>
#include <cstddef>
#include <ranges>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace gar {

template <class R, class S>
concept PointSequence = HadamardSpace<S> && std::ranges::random_access_range<R> &&
                        std::ranges::sized_range<R> &&
                        std::same_as<std::ranges::range_value_t<R>, typename S::Point>;

/// View of points reordered by order (points[order[0]], points[order[1]], ...).
template <class Point>
auto permuted(std::span<const Point> points, const std::vector<std::size_t>& order) {
    return order | std::views::transform([points](std::size_t i) -> const Point& { return points[i]; });
}

inline constexpr double kDefaultPhiTolerance = 1e-8;

template <HadamardSpace S>
struct FitResult {
    typename S::Point mu_hat;
    double phi_hat = 0.0;
    /// (u, L_T(u)) at every point probed by the search.
    std::vector<std::pair<double, double>> L_curve;
    double r_squared = 0.0;
    double frechet_variance = 0.0;  ///< M_T(mu_hat)
    std::size_t iterations = 0;
};

enum class TestVariant { DT, PhiHat };

/// Plain: (1/B) sum 1{criterion}. Exact: (1 + sum) / (1 + B), counting the identity permutation.
enum class PValueMode { Plain, Exact };

std::string_view variant_name(TestVariant v) noexcept;

struct TestResult {
    double statistic = 0.0;
    std::vector<double> permuted;
    double p_value = 1.0;
    double alpha = 0.05;
    bool reject = false;
    TestVariant variant = TestVariant::DT;
};

struct NullMoments {
    double mean_hat = 0.0;
    double var_hat = 0.0;
};

struct ResidualReport {
    std::vector<double> gar_residuals;   ///< d(X_{t+1}, geodesic(mu_hat, X_t, phi_hat))^2
    std::vector<double> null_residuals;  ///< d(X_{t+1}, mu_hat)^2
};

template <HadamardSpace S>
typename S::Point fit_mean(const S& space, std::span<const typename S::Point> points) {
    if (points.empty()) throw ArgumentError("fit_mean: empty trajectory");
    return empirical_frechet_mean(space, points);
}

/// L_T(u) = 1/(T-1) sum_{t<T} d(X_{t+1}, geodesic(mu_hat, X_t, u))^2.
template <HadamardSpace S, PointSequence<S> R>
double eval_L(const S& space, const R& seq, const typename S::Point& mu_hat, double u) {
    const auto T = static_cast<std::size_t>(std::ranges::size(seq));
    if (T < 2) throw ArgumentError("eval_L: need at least 2 points");
    if (!(u >= 0.0 && u <= 1.0)) throw ArgumentError("eval_L: u must lie in [0, 1]");
    double acc = 0.0;
    for (std::size_t t = 0; t + 1 < T; ++t) acc += space.distance_sq_to_geodesic(seq[t + 1], mu_hat, seq[t], u);
    return acc / static_cast<double>(T - 1);
}

namespace detail {

template <HadamardSpace S, PointSequence<S> R>
double lagged_dispersion(const S& space, const R& seq, const typename S::Point& mu_hat) {
    const auto T = static_cast<std::size_t>(std::ranges::size(seq));
    double acc = 0.0;
    for (std::size_t t = 0; t + 1 < T; ++t) acc += space.distance_sq(seq[t], mu_hat);
    return acc;
}

}  // namespace detail

/// Golden-section minimizer of L_T over [0, 1] with the full probe record.
/// Throws DegenerateInputError when X_1..X_{T-1} all coincide with mu_hat (L_T is flat).
template <HadamardSpace S, PointSequence<S> R>
GoldenSectionResult fit_phi_search(const S& space, const R& seq, const typename S::Point& mu_hat,
                                   double tol = kDefaultPhiTolerance) {
    if (std::ranges::size(seq) < 2) throw ArgumentError("fit_phi: need at least 2 points");
    if (!(tol > 0.0)) throw ArgumentError("fit_phi: tol must be positive");
    if (detail::lagged_dispersion(space, seq, mu_hat) == 0.0) {
        throw DegenerateInputError("fit_phi: trajectory has zero dispersion around the mean");
    }
    return golden_section_minimize([&](double u) { return eval_L(space, seq, mu_hat, u); }, 0.0, 1.0, tol);
}

template <HadamardSpace S, PointSequence<S> R>
double fit_phi(const S& space, const R& seq, const typename S::Point& mu_hat, double tol = kDefaultPhiTolerance) {
    return fit_phi_search(space, seq, mu_hat, tol).x;
}

/// Clipped lag-one autocorrelation around the full-sample mean (real line only).
double fit_phi_closed_form(std::span<const ScalarPoint> traj);

/// D_T = 1/(T-1) sum_{t<T} d(X_t, X_{t+1})^2.
template <HadamardSpace S, PointSequence<S> R>
double statistic_D(const S& space, const R& seq) {
    const auto T = static_cast<std::size_t>(std::ranges::size(seq));
    if (T < 2) throw ArgumentError("statistic_D: need at least 2 points");
    double acc = 0.0;
    for (std::size_t t = 0; t + 1 < T; ++t) acc += space.distance_sq(seq[t], seq[t + 1]);
    return acc / static_cast<double>(T - 1);
}

/// Permutation test of serial independence (H0: phi = 0).
///
/// Permutation b is drawn from rng.child(b); statistics are stored by index, so the
/// result does not depend on evaluation order. DT counts D_T >= D_T^pi, PhiHat
/// counts phi_hat <= phi_hat^pi (ties included in both). mu_hat is computed once and
/// reused for every permuted refit since the mean is permutation invariant.
template <HadamardSpace S>
TestResult permutation_test(const S& space, std::span<const typename S::Point> points, std::size_t B, double alpha,
                            TestVariant variant, const RngStream& rng, PValueMode mode = PValueMode::Plain) {
    if (B < 1) throw ArgumentError("permutation_test: B must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("permutation_test: alpha must lie in (0, 1)");
    if (points.size() < 3) throw ArgumentError("permutation_test: need at least 3 points");

    TestResult res;
    res.alpha = alpha;
    res.variant = variant;
    res.permuted.resize(B);

    typename S::Point mu_hat = variant == TestVariant::PhiHat ? fit_mean(space, points) : points.front();
    auto statistic = [&](const auto& seq) {
        return variant == TestVariant::DT ? statistic_D(space, seq) : fit_phi(space, seq, mu_hat);
    };
    res.statistic = statistic(points);

    std::vector<std::size_t> order(points.size());
    std::size_t count = 0;
    for (std::size_t b = 0; b < B; ++b) {
        RngStream perm_rng = rng.child(b);
        perm_rng.permutation(order);
        const double s = statistic(permuted(points, order));
        res.permuted[b] = s;
        if (variant == TestVariant::DT ? res.statistic >= s : res.statistic <= s) ++count;
    }
    res.p_value = mode == PValueMode::Plain
                      ? static_cast<double>(count) / static_cast<double>(B)
                      : static_cast<double>(count + 1) / static_cast<double>(B + 1);
    res.reject = res.p_value <= alpha;
    return res;
}

/// Mean and divide-by-B variance of a sample of permuted statistics.
NullMoments null_moments_from(std::span<const double> permuted_statistics);

/// Mean and divide-by-B variance of D_T over B random permutations.
template <HadamardSpace S>
NullMoments estimate_null_moments(const S& space, std::span<const typename S::Point> points, std::size_t B,
                                  const RngStream& rng) {
    if (B < 2) throw ArgumentError("estimate_null_moments: B must be >= 2");
    if (points.size() < 2) throw ArgumentError("estimate_null_moments: need at least 2 points");
    std::vector<double> d(B);
    std::vector<std::size_t> order(points.size());
    for (std::size_t b = 0; b < B; ++b) {
        RngStream perm_rng = rng.child(b);
        perm_rng.permutation(order);
        d[b] = statistic_D(space, permuted(points, order));
    }
    return null_moments_from(d);
}


/// 1 - sum_{t<T} d(X_{t+1}, geodesic(mu_hat, X_t, phi_hat))^2 / sum_{t<T} d(X_t, mu_hat)^2.
/// Throws DegenerateInputError on a zero denominator.
template <HadamardSpace S>
double r_squared(const S& space, std::span<const typename S::Point> points, const typename S::Point& mu_hat,
                 double phi_hat) {
    if (points.size() < 2) throw ArgumentError("r_squared: need at least 2 points");
    const double denom = detail::lagged_dispersion(space, points, mu_hat);
    if (!(denom > 0.0)) throw DegenerateInputError("r_squared: zero dispersion around the mean");
    double num = 0.0;
    for (std::size_t t = 0; t + 1 < points.size(); ++t) {
        num += space.distance_sq_to_geodesic(points[t + 1], mu_hat, points[t], phi_hat);
    }
    return 1.0 - num / denom;
}

template <HadamardSpace S>
ResidualReport residuals(const S& space, std::span<const typename S::Point> points, const typename S::Point& mu_hat,
                         double phi_hat) {
    if (points.size() < 2) throw ArgumentError("residuals: need at least 2 points");
    ResidualReport rep;
    rep.gar_residuals.reserve(points.size() - 1);
    rep.null_residuals.reserve(points.size() - 1);
    for (std::size_t t = 0; t + 1 < points.size(); ++t) {
        rep.gar_residuals.push_back(space.distance_sq_to_geodesic(points[t + 1], mu_hat, points[t], phi_hat));
        rep.null_residuals.push_back(space.distance_sq(points[t + 1], mu_hat));
    }
    return rep;
}

/// Mean, concentration, R^2 and Frechet variance in one pass.
template <HadamardSpace S>
FitResult<S> fit(const S& space, std::span<const typename S::Point> points, double tol = kDefaultPhiTolerance) {
    FitResult<S> res;
    res.mu_hat = fit_mean(space, points);
    const GoldenSectionResult search = fit_phi_search(space, points, res.mu_hat, tol);
    res.phi_hat = search.x;
    res.L_curve = search.probes;
    std::sort(res.L_curve.begin(), res.L_curve.end());
    res.iterations = search.iterations;
    res.r_squared = r_squared(space, points, res.mu_hat, res.phi_hat);
    res.frechet_variance = eval_M(space, points, res.mu_hat);
    return res;
}

}  // namespace gar
