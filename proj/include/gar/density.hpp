#pragma once

#include "gar/wasserstein_space.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace gar {

struct KdeOptions {
    /// Bandwidth is bandwidth_factor * sd * n^(-1/5); 1.0 is Scott's rule as used here.
    double bandwidth_factor = 1.0;
    /// The density is tabulated on grid_multiplier * m equally spaced points over [lo, hi].
    std::size_t grid_multiplier = 4;
};

/// Gaussian KDE truncated to [lo, hi] and renormalized, tabulated on a grid.
struct TruncatedKde {
    double bandwidth = 0.0;
    std::vector<double> x;        ///< grid abscissae, x.front() == lo, x.back() == hi
    std::vector<double> density;  ///< renormalized so the trapezoidal integral is 1
    std::vector<double> cdf;      ///< trapezoidal CDF, cdf.front() == 0, cdf.back() == 1
};

/// Throws ArgumentError for fewer than 2 samples or lo >= hi, and
/// DegenerateInputError when the samples have zero variance or no mass falls in [lo, hi].
TruncatedKde truncated_kde(std::span<const double> samples, double lo, double hi, std::size_t grid_points,
                           const KdeOptions& options = {});

/// KDE of the samples, truncated to [lo, hi], inverted at the m grid midpoints.
QuantileFunction density_to_quantile(std::span<const double> samples, double lo, double hi,
                                     std::size_t m = kDefaultGridSize, const KdeOptions& options = {});

}  // namespace gar
