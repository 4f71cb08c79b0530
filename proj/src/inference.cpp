#include "gar/inference.hpp"

namespace gar {

std::string_view variant_name(TestVariant v) noexcept {
    switch (v) {
        case TestVariant::DT: return "DT";
        case TestVariant::PhiHat: return "PhiHat";
    }
    return "unknown";
}

double fit_phi_closed_form(std::span<const ScalarPoint> traj) {
    const std::size_t T = traj.size();
    if (T < 2) throw ArgumentError("fit_phi_closed_form: need at least 2 points");
    double mean = 0.0;
    for (const auto& x : traj) mean += x.value;
    mean /= static_cast<double>(T);
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t + 1 < T; ++t) {
        const double a = traj[t].value - mean;
        num += (traj[t + 1].value - mean) * a;
        den += a * a;
    }
    if (!(den > 0.0)) throw DegenerateInputError("fit_phi_closed_form: zero denominator");
    return std::max(0.0, num / den);
}

NullMoments null_moments_from(std::span<const double> d) {
    if (d.size() < 2) throw ArgumentError("null_moments_from: need at least 2 statistics");
    const auto B = static_cast<double>(d.size());
    double mean = 0.0;
    for (double x : d) mean += x;
    mean /= B;
    double var = 0.0;
    for (double x : d) var += (x - mean) * (x - mean);
    return {mean, var / B};
}

}  // namespace gar
