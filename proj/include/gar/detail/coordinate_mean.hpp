#pragma once

#include "gar/kernels.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

namespace gar::detail {

/// Coordinate-wise mean of equally sized vectors.
///
/// The inputs are accumulated in lexicographic order of their coordinates, so the
/// floating-point result is identical for every ordering of the input list.
template <class Point, class Coords>
std::vector<double> ordered_coordinate_mean(std::span<const Point> points, Coords coords) {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const std::span<const double> x = coords(points[a]);
        const std::span<const double> y = coords(points[b]);
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
    });

    std::vector<double> acc(coords(points[order.front()]).size(), 0.0);
    for (std::size_t i : order) kernels::accumulate(acc, coords(points[i]));
    kernels::scale(acc, 1.0 / static_cast<double>(points.size()));
    return acc;
}

}  // namespace gar::detail
