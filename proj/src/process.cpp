#include "gar/process.hpp"

#include <cmath>

namespace gar {

double fit_geometric_rate(const std::vector<double>& estimates) {
    if (estimates.empty()) throw ArgumentError("fit_geometric_rate: no estimates");
    for (double e : estimates) {
        if (!(e > 0.0)) return 0.0;
    }
    if (estimates.size() == 1) return estimates.front();

    const auto n = static_cast<double>(estimates.size());
    double mean_t = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        mean_t += static_cast<double>(i + 1);
        mean_y += std::log(estimates[i]);
    }
    mean_t /= n;
    mean_y /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        const double dt = static_cast<double>(i + 1) - mean_t;
        sxy += dt * (std::log(estimates[i]) - mean_y);
        sxx += dt * dt;
    }
    return std::exp(sxy / sxx);
}

}  // namespace gar
