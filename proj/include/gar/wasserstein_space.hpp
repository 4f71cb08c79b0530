#pragma once

// One-dimensional distributions on an interval [lo, hi] under the 2-Wasserstein
// distance, represented by their quantile functions sampled on the midpoint grid
// u_j = (j - 1/2) / m. Quantile functions form a closed convex cone in L2[0,1],
// so distance, geodesic and mean are the L2 ones applied to the grid values.

#include "gar/error.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace gar {

struct QuantileFunction {
    double support_lo = 0.0;
    double support_hi = 1.0;
    /// Quantile values at the m midpoints, non-decreasing.
    std::vector<double> values;

    std::size_t m() const noexcept { return values.size(); }

    friend bool operator==(const QuantileFunction&, const QuantileFunction&) = default;
};

inline constexpr std::size_t kDefaultGridSize = 512;

/// Midpoint u_j = (j + 1/2) / m for the zero-based index j.
inline double grid_midpoint(std::size_t j, std::size_t m) {
    return (static_cast<double>(j) + 0.5) / static_cast<double>(m);
}

std::vector<double> midpoint_grid(std::size_t m);

/// Midpoint-rule L2[0,1] distance between quantile grids. Throws ArgumentError on grid mismatch.
double wasserstein_distance(const QuantileFunction& p, const QuantileFunction& q);
double wasserstein_distance_sq(const QuantileFunction& p, const QuantileFunction& q);

/// Pointwise linear interpolation of the quantile values.
QuantileFunction wasserstein_geodesic(const QuantileFunction& p, const QuantileFunction& q, double t);

/// Pointwise arithmetic mean of the quantile values.
QuantileFunction wasserstein_mean(std::span<const QuantileFunction> points);

/// In-place pool-adjacent-violators projection onto non-decreasing sequences
/// (the L2 metric projection onto the monotone cone).
void isotonic_projection(std::span<double> values);

/// Restores the QuantileFunction invariants after a perturbation: PAVA when some
/// decrease exceeds 1e-12, then clamping to the support.
void enforce_quantile_invariants(QuantileFunction& q);

/// Quantile grid of N(0,1) truncated to [0,1].
QuantileFunction truncated_normal_grid(std::size_t m = kDefaultGridSize);

class WassersteinSpace {
public:
    using Point = QuantileFunction;
    static constexpr std::string_view tag = "wasserstein";

    WassersteinSpace(std::size_t m = kDefaultGridSize, double lo = 0.0, double hi = 1.0);

    std::size_t m() const noexcept { return m_; }
    double support_lo() const noexcept { return lo_; }
    double support_hi() const noexcept { return hi_; }

    double distance(const Point& x, const Point& y) const { return wasserstein_distance(x, y); }
    double distance_sq(const Point& x, const Point& y) const { return wasserstein_distance_sq(x, y); }
    Point geodesic(const Point& x, const Point& y, double t) const { return wasserstein_geodesic(x, y, t); }
    double distance_sq_to_geodesic(const Point& z, const Point& x, const Point& y, double t) const;
    Point frechet_mean(std::span<const Point> points) const { return wasserstein_mean(points); }

    /// Checks grid size and support against this space, monotonicity (1e-12) and bounds.
    void validate(const Point& x) const;
    bool approx_equal(const Point& x, const Point& y) const;

private:
    std::size_t m_;
    double lo_;
    double hi_;
};

}  // namespace gar
