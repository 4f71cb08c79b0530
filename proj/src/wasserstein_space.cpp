#include "gar/wasserstein_space.hpp"

#include "gar/detail/coordinate_mean.hpp"
#include "gar/kernels.hpp"
#include "gar/normal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gar {
namespace {

constexpr double kMonotoneTol = 1e-12;

void check_grids(const QuantileFunction& p, const QuantileFunction& q, const char* what) {
    if (p.m() != q.m() || p.m() == 0) {
        throw ArgumentError(std::string(what) + ": grid sizes differ (" + std::to_string(p.m()) +
                            " vs " + std::to_string(q.m()) + ")");
    }
    if (p.support_lo != q.support_lo || p.support_hi != q.support_hi) {
        throw ArgumentError(std::string(what) + ": supports differ");
    }
}

}  // namespace

std::vector<double> midpoint_grid(std::size_t m) {
    std::vector<double> u(m);
    for (std::size_t j = 0; j < m; ++j) u[j] = grid_midpoint(j, m);
    return u;
}

double wasserstein_distance_sq(const QuantileFunction& p, const QuantileFunction& q) {
    check_grids(p, q, "wasserstein_distance");
    return kernels::sum_sq_diff(p.values, q.values) / static_cast<double>(p.m());
}

double wasserstein_distance(const QuantileFunction& p, const QuantileFunction& q) {
    return std::sqrt(wasserstein_distance_sq(p, q));
}

QuantileFunction wasserstein_geodesic(const QuantileFunction& p, const QuantileFunction& q, double t) {
    check_grids(p, q, "wasserstein_geodesic");
    if (!(t >= 0.0 && t <= 1.0)) throw ArgumentError("wasserstein_geodesic: t must lie in [0, 1]");
    QuantileFunction out{p.support_lo, p.support_hi, std::vector<double>(p.m())};
    if (t == 0.0) {
        out.values = p.values;
    } else if (t == 1.0) {
        out.values = q.values;
    } else {
        kernels::lerp(out.values, p.values, q.values, t);
    }
    return out;
}

QuantileFunction wasserstein_mean(std::span<const QuantileFunction> points) {
    if (points.empty()) throw ArgumentError("wasserstein_mean: empty point list");
    for (const auto& p : points) check_grids(points.front(), p, "wasserstein_mean");
    QuantileFunction out{points.front().support_lo, points.front().support_hi, {}};
    out.values = detail::ordered_coordinate_mean(
        points, [](const QuantileFunction& q) { return std::span<const double>(q.values); });
    return out;
}

void isotonic_projection(std::span<double> values) {
    // Blocks are (sum, count); each block's level is its mean.
    std::vector<double> sums;
    std::vector<std::size_t> counts;
    sums.reserve(values.size());
    counts.reserve(values.size());
    for (double v : values) {
        sums.push_back(v);
        counts.push_back(1);
        while (sums.size() > 1) {
            const std::size_t k = sums.size() - 1;
            if (sums[k - 1] / static_cast<double>(counts[k - 1]) <= sums[k] / static_cast<double>(counts[k])) break;
            sums[k - 1] += sums[k];
            counts[k - 1] += counts[k];
            sums.pop_back();
            counts.pop_back();
        }
    }
    std::size_t i = 0;
    for (std::size_t b = 0; b < sums.size(); ++b) {
        const double level = sums[b] / static_cast<double>(counts[b]);
        for (std::size_t c = 0; c < counts[b]; ++c) values[i++] = level;
    }
}

void enforce_quantile_invariants(QuantileFunction& q) {
    for (std::size_t j = 1; j < q.values.size(); ++j) {
        if (q.values[j] < q.values[j - 1] - kMonotoneTol) {
            isotonic_projection(q.values);
            break;
        }
    }
    for (double& v : q.values) v = std::clamp(v, q.support_lo, q.support_hi);
}

QuantileFunction truncated_normal_grid(std::size_t m) {
    QuantileFunction q{0.0, 1.0, std::vector<double>(m)};
    for (std::size_t j = 0; j < m; ++j) q.values[j] = truncated_normal_quantile(grid_midpoint(j, m));
    return q;
}

WassersteinSpace::WassersteinSpace(std::size_t m, double lo, double hi) : m_(m), lo_(lo), hi_(hi) {
    if (m == 0) throw ArgumentError("WassersteinSpace: grid size must be positive");
    if (!(lo < hi)) throw ArgumentError("WassersteinSpace: support requires lo < hi");
}

double WassersteinSpace::distance_sq_to_geodesic(const Point& z, const Point& x, const Point& y, double t) const {
    check_grids(z, x, "distance_sq_to_geodesic");
    check_grids(x, y, "distance_sq_to_geodesic");
    return kernels::sum_sq_diff_to_lerp(z.values, x.values, y.values, t) / static_cast<double>(z.m());
}

void WassersteinSpace::validate(const Point& x) const {
    if (x.m() != m_) {
        throw ValidationError("quantile function has " + std::to_string(x.m()) + " grid values, expected " +
                              std::to_string(m_));
    }
    if (x.support_lo != lo_ || x.support_hi != hi_) throw ValidationError("quantile function support mismatch");
    const double slack = kMonotoneTol * (1.0 + std::max(std::abs(lo_), std::abs(hi_)));
    for (std::size_t j = 0; j < x.m(); ++j) {
        if (!std::isfinite(x.values[j])) throw ValidationError("quantile value is not finite");
        if (j > 0 && x.values[j] < x.values[j - 1] - kMonotoneTol) {
            throw ValidationError("quantile values decrease at index " + std::to_string(j));
        }
    }
    if (x.values.front() < lo_ - slack || x.values.back() > hi_ + slack) {
        throw ValidationError("quantile values leave the support");
    }
}

bool WassersteinSpace::approx_equal(const Point& x, const Point& y) const {
    const double scale = std::max(std::abs(lo_), std::abs(hi_));
    return distance(x, y) <= 1e-12 * (1.0 + scale);
}

}  // namespace gar
