#pragma once

#include <concepts>
#include <span>
#include <string_view>

namespace gar {

/// A Hadamard space with a concrete point representation.
///
/// Implementations provide the metric, the unique geodesic, and the exact
/// (closed-form) Frechet mean. distance_sq_to_geodesic(z, x, y, t) must equal
/// distance_sq(z, geodesic(x, y, t)) and exists so hot loops avoid allocating
/// the intermediate point. approx_equal compares representations at the space's
/// tolerance of 1e-12 * (1 + scale).
template <class S>
concept HadamardSpace = requires(const S& s, const typename S::Point& x, double t,
                                 std::span<const typename S::Point> pts) {
    typename S::Point;
    { S::tag } -> std::convertible_to<std::string_view>;
    { s.distance(x, x) } -> std::same_as<double>;
    { s.distance_sq(x, x) } -> std::same_as<double>;
    { s.geodesic(x, x, t) } -> std::same_as<typename S::Point>;
    { s.distance_sq_to_geodesic(x, x, x, t) } -> std::same_as<double>;
    { s.frechet_mean(pts) } -> std::same_as<typename S::Point>;
    { s.validate(x) };
    { s.approx_equal(x, x) } -> std::same_as<bool>;
};

}  // namespace gar
