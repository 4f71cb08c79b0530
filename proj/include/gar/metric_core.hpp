#pragma once

// Space-generic comparison inequalities and the empirical Frechet function.
// The checkers evaluate both sides of a Hadamard-space inequality so property
// tests can assert the slack on random configurations in every space.

#include "gar/error.hpp"
#include "gar/space.hpp"

#include <cmath>
#include <span>
#include <string>

namespace gar {

struct InequalityResidual {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  ///< rhs - lhs

    /// slack >= -rel_tol * (1 + |rhs|)
    bool holds(double rel_tol = 1e-9) const { return slack >= -rel_tol * (1.0 + std::abs(rhs)); }
};

inline InequalityResidual make_residual(double lhs, double rhs) { return {lhs, rhs, rhs - lhs}; }

namespace detail {
inline void check_unit_interval(double t, const char* what) {
    if (!(t >= 0.0 && t <= 1.0)) throw ArgumentError(std::string(what) + ": t must lie in [0, 1]");
}
}  // namespace detail

/// d(z, g(t))^2 <= (1-t) d(z, x0)^2 + t d(z, x1)^2 - t(1-t) d(x0, x1)^2 where g joins x0 to x1.
template <HadamardSpace S>
InequalityResidual check_npc(const S& space, const typename S::Point& z, const typename S::Point& x0,
                             const typename S::Point& x1, double t) {
    detail::check_unit_interval(t, "check_npc");
    space.validate(z);
    space.validate(x0);
    space.validate(x1);
    const double lhs = space.distance_sq_to_geodesic(z, x0, x1, t);
    const double rhs = (1.0 - t) * space.distance_sq(z, x0) + t * space.distance_sq(z, x1) -
                       t * (1.0 - t) * space.distance_sq(x0, x1);
    return make_residual(lhs, rhs);
}

/// Reshetnyak: d(x1,x3)^2 + d(x2,x4)^2 <= d(x2,x3)^2 + d(x4,x1)^2 + 2 d(x1,x2) d(x3,x4).
template <HadamardSpace S>
InequalityResidual check_quadruple(const S& space, const typename S::Point& x1, const typename S::Point& x2,
                                   const typename S::Point& x3, const typename S::Point& x4) {
    space.validate(x1);
    space.validate(x2);
    space.validate(x3);
    space.validate(x4);
    const double lhs = space.distance_sq(x1, x3) + space.distance_sq(x2, x4);
    const double rhs = space.distance_sq(x2, x3) + space.distance_sq(x4, x1) +
                       2.0 * space.distance(x1, x2) * space.distance(x3, x4);
    return make_residual(lhs, rhs);
}

/// d(g(t), h(t))^2 <= (1-t) d(g0,h0)^2 + t d(g1,h1)^2 - t(1-t) [d(g0,g1) - d(h0,h1)]^2.
template <HadamardSpace S>
InequalityResidual check_geodesic_comparison(const S& space, const typename S::Point& g0,
                                             const typename S::Point& g1, const typename S::Point& h0,
                                             const typename S::Point& h1, double t) {
    detail::check_unit_interval(t, "check_geodesic_comparison");
    space.validate(g0);
    space.validate(g1);
    space.validate(h0);
    space.validate(h1);
    const double lhs = space.distance_sq(space.geodesic(g0, g1, t), space.geodesic(h0, h1, t));
    const double gap = space.distance(g0, g1) - space.distance(h0, h1);
    const double rhs =
        (1.0 - t) * space.distance_sq(g0, h0) + t * space.distance_sq(g1, h1) - t * (1.0 - t) * gap * gap;
    return make_residual(lhs, rhs);
}

/// |g(x) - g(x')| <= 2 d(w, w0) d(x, x') with g(x) = d(x, w)^2 - d(x, w0)^2.
template <HadamardSpace S>
InequalityResidual check_g_lipschitz(const S& space, const typename S::Point& x, const typename S::Point& x_prime,
                                     const typename S::Point& w, const typename S::Point& w0) {
    const double gx = space.distance_sq(x, w) - space.distance_sq(x, w0);
    const double gxp = space.distance_sq(x_prime, w) - space.distance_sq(x_prime, w0);
    return make_residual(std::abs(gx - gxp), 2.0 * space.distance(w, w0) * space.distance(x, x_prime));
}

/// Empirical Frechet function (1/T) sum_t d(X_t, w)^2.
template <HadamardSpace S>
double eval_M(const S& space, std::span<const typename S::Point> points, const typename S::Point& w) {
    if (points.empty()) throw ArgumentError("eval_M: empty point list");
    double acc = 0.0;
    for (const auto& x : points) acc += space.distance_sq(x, w);
    return acc / static_cast<double>(points.size());
}

/// Exact minimizer of eval_M through the space's closed form.
template <HadamardSpace S>
typename S::Point empirical_frechet_mean(const S& space, std::span<const typename S::Point> points) {
    if (points.empty()) throw ArgumentError("empirical_frechet_mean: empty point list");
    for (const auto& p : points) space.validate(p);
    return space.frechet_mean(points);
}

}  // namespace gar
