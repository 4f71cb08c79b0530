#include "gar/density.hpp"

#include "gar/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gar {

TruncatedKde truncated_kde(std::span<const double> samples, double lo, double hi, std::size_t grid_points,
                           const KdeOptions& options) {
    if (samples.size() < 2) throw ArgumentError("truncated_kde: need at least 2 samples");
    if (!(lo < hi)) throw ArgumentError("truncated_kde: support requires lo < hi");
    if (grid_points < 2) throw ArgumentError("truncated_kde: need at least 2 grid points");

    const auto n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double s : samples) mean += s;
    mean /= n;
    double ss = 0.0;
    for (double s : samples) ss += (s - mean) * (s - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    if (!(sd > 0.0)) throw DegenerateInputError("truncated_kde: samples have zero variance");

    TruncatedKde kde;
    kde.bandwidth = options.bandwidth_factor * sd * std::pow(n, -0.2);
    const double h = kde.bandwidth;
    const double norm = 1.0 / (n * h * std::sqrt(2.0 * std::numbers::pi));
    const double cutoff = 9.0 * h;

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());

    kde.x.resize(grid_points);
    kde.density.assign(grid_points, 0.0);
    const double step = (hi - lo) / static_cast<double>(grid_points - 1);
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double x = i + 1 == grid_points ? hi : lo + step * static_cast<double>(i);
        kde.x[i] = x;
        auto first = std::lower_bound(sorted.begin(), sorted.end(), x - cutoff);
        auto last = std::upper_bound(first, sorted.end(), x + cutoff);
        double acc = 0.0;
        for (auto it = first; it != last; ++it) {
            const double z = (x - *it) / h;
            acc += std::exp(-0.5 * z * z);
        }
        kde.density[i] = acc * norm;
    }

    kde.cdf.assign(grid_points, 0.0);
    for (std::size_t i = 1; i < grid_points; ++i) {
        kde.cdf[i] = kde.cdf[i - 1] + 0.5 * step * (kde.density[i] + kde.density[i - 1]);
    }
    const double mass = kde.cdf.back();
    if (!(mass > 0.0)) throw DegenerateInputError("truncated_kde: no density mass inside the support");
    for (double& d : kde.density) d /= mass;
    for (double& c : kde.cdf) c /= mass;
    kde.cdf.back() = 1.0;
    return kde;
}

QuantileFunction density_to_quantile(std::span<const double> samples, double lo, double hi, std::size_t m,
                                     const KdeOptions& options) {
    if (m == 0) throw ArgumentError("density_to_quantile: grid size must be positive");
    const TruncatedKde kde = truncated_kde(samples, lo, hi, options.grid_multiplier * m, options);

    QuantileFunction q{lo, hi, std::vector<double>(m)};
    for (std::size_t j = 0; j < m; ++j) {
        const double u = grid_midpoint(j, m);
        // First grid cell whose CDF reaches u; interpolate linearly inside it.
        const auto it = std::lower_bound(kde.cdf.begin(), kde.cdf.end(), u);
        const auto k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - kde.cdf.begin(), 1));
        const double c0 = kde.cdf[k - 1];
        const double c1 = kde.cdf[k];
        const double w = c1 > c0 ? (u - c0) / (c1 - c0) : 0.0;
        q.values[j] = kde.x[k - 1] + w * (kde.x[k] - kde.x[k - 1]);
    }
    enforce_quantile_invariants(q);
    return q;
}

}  // namespace gar
