#include "gar/noise.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace gar {

ScalarPoint apply_multiplicative(const ScalarPoint& x, double sigma, RngStream& rng) {
    const double eta = sigma * rng.normal();
    return {(1.0 + eta) * x.value};
}

int sample_transport_frequency(RngStream& rng, int max_freq) {
    if (max_freq < 1) throw ArgumentError("sample_transport_frequency: max_freq must be >= 1");
    const auto idx = static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * max_freq)));
    return idx < max_freq ? idx - max_freq : idx - max_freq + 1;
}

double transport_map(double x, int k) {
    const double pk = std::numbers::pi * static_cast<double>(k);
    return x - std::sin(pk * x) / std::abs(pk);
}

QuantileFunction apply_transport(const QuantileFunction& q, int k) {
    if (k == 0) throw ArgumentError("apply_transport: frequency must be non-zero");
    if (q.support_lo < 0.0 || q.support_hi > 1.0) {
        throw ArgumentError("apply_transport: support must lie inside [0, 1]");
    }
    QuantileFunction out{q.support_lo, q.support_hi, std::vector<double>(q.m())};
    for (std::size_t j = 0; j < q.m(); ++j) out.values[j] = transport_map(q.values[j], k);
    enforce_quantile_invariants(out);
    return out;
}

SpdPoint apply_congruence(const SpdPoint& x, double sigma_low, double sigma_diag, RngStream& rng) {
    const std::size_t p = x.dim();
    // Draw order: strict lower entries row-major, then the log-diagonal.
    DenseMatrix noise(p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < i; ++j) noise(i, j) = sigma_low * rng.normal();
    }
    std::vector<double> noise_logd(p);
    for (std::size_t i = 0; i < p; ++i) noise_logd[i] = sigma_diag * rng.normal();

    const DenseMatrix l = cholesky_factor(x);
    const auto logd = x.log_diag();
    SpdPoint out(p);
    auto out_lower = out.strict_lower();
    auto out_logd = out.log_diag();
    for (std::size_t i = 0; i < p; ++i) {
        const double noise_ii = std::exp(noise_logd[i]);
        for (std::size_t j = 0; j < i; ++j) {
            // (L_eps L)_ij = sum_{k=j..i} L_eps(i,k) L(k,j)
            double s = noise_ii * l(i, j);
            for (std::size_t k = j; k < i; ++k) s += noise(i, k) * l(k, j);
            out_lower[strict_lower_index(i, j)] = s;
        }
        out_logd[i] = noise_logd[i] + logd[i];
    }
    return out;
}

void validate_noise(const NoiseModel& noise) {
    std::visit(
        [](const auto& n) {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, MultiplicativeNoise>) {
                if (!(n.sigma > 0.0)) throw ArgumentError("multiplicative noise requires sigma > 0");
            } else if constexpr (std::is_same_v<N, TransportNoise>) {
                if (n.max_freq < 1) throw ArgumentError("transport noise requires max_freq >= 1");
            } else {
                if (!(n.sigma_low > 0.0) || !(n.sigma_diag > 0.0)) {
                    throw ArgumentError("congruence noise requires sigma_low > 0 and sigma_diag > 0");
                }
            }
        },
        noise);
}

}  // namespace gar
