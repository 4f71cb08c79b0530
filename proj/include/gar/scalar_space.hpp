#pragma once

#include "gar/error.hpp"

#include <algorithm>
#include <cmath>
#include <compare>
#include <span>
#include <string_view>
#include <vector>

namespace gar {

struct ScalarPoint {
    double value = 0.0;

    friend auto operator<=>(const ScalarPoint&, const ScalarPoint&) = default;
};

/// The real line with d(x, y) = |x - y|.
class ScalarSpace {
public:
    using Point = ScalarPoint;
    static constexpr std::string_view tag = "scalar";

    double distance(const Point& x, const Point& y) const { return std::abs(x.value - y.value); }

    double distance_sq(const Point& x, const Point& y) const {
        const double d = x.value - y.value;
        return d * d;
    }

    Point geodesic(const Point& x, const Point& y, double t) const {
        return {(1.0 - t) * x.value + t * y.value};
    }

    double distance_sq_to_geodesic(const Point& z, const Point& x, const Point& y, double t) const {
        const double d = z.value - ((1.0 - t) * x.value + t * y.value);
        return d * d;
    }

    /// Arithmetic mean. Values are summed in sorted order so the result does not
    /// depend on the order of the input.
    Point frechet_mean(std::span<const Point> points) const {
        if (points.empty()) throw ArgumentError("frechet_mean: empty point list");
        std::vector<double> v(points.size());
        std::transform(points.begin(), points.end(), v.begin(), [](const Point& p) { return p.value; });
        std::sort(v.begin(), v.end());
        double sum = 0.0;
        for (double x : v) sum += x;
        return {sum / static_cast<double>(v.size())};
    }

    void validate(const Point& x) const {
        if (!std::isfinite(x.value)) throw ValidationError("scalar point is not finite");
    }

    bool approx_equal(const Point& x, const Point& y) const {
        const double scale = std::max(std::abs(x.value), std::abs(y.value));
        return distance(x, y) <= 1e-12 * (1.0 + scale);
    }
};

}  // namespace gar
