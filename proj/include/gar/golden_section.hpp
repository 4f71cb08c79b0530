#pragma once

#include "gar/error.hpp"

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace gar {

struct GoldenSectionResult {
    double x = 0.0;   ///< best probed abscissa
    double fx = 0.0;  ///< objective at x
    std::size_t iterations = 0;
    /// Every (x, f(x)) evaluated, in evaluation order; includes both bracket ends.
    std::vector<std::pair<double, double>> probes;
};

/// Golden-section search for the minimum of a convex f on [lo, hi].
///
/// Shrinks the bracket until its width is at most tol, evaluating one new interior
/// point per iteration. The bracket ends and the final midpoint are evaluated too,
/// and the best of all probes is returned, so the result never loses to an
/// endpoint when the minimum sits on the boundary.
template <class F>
GoldenSectionResult golden_section_minimize(F&& f, double lo, double hi, double tol = 1e-8,
                                            std::size_t max_iterations = 200) {
    if (!(lo < hi)) throw ArgumentError("golden_section_minimize: requires lo < hi");
    if (!(tol > 0.0)) throw ArgumentError("golden_section_minimize: tol must be positive");

    constexpr double inv_phi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
    GoldenSectionResult res;
    auto eval = [&](double x) {
        const double v = f(x);
        res.probes.emplace_back(x, v);
        return v;
    };

    eval(lo);
    eval(hi);
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = eval(c);
    double fd = eval(d);
    while (b - a > tol && res.iterations < max_iterations) {
        ++res.iterations;
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d);
        }
    }
    eval(0.5 * (a + b));

    res.x = res.probes.front().first;
    res.fx = res.probes.front().second;
    for (const auto& [x, v] : res.probes) {
        if (v < res.fx) {
            res.x = x;
            res.fx = v;
        }
    }
    return res;
}

}  // namespace gar
