#include "gar/rng.hpp"

#include "gar/normal.hpp"

#include <utility>

namespace gar {

std::uint64_t RngStream::below(std::uint64_t bound) {
    // Lemire's multiply-shift with rejection of the biased low region.
    std::uint64_t x = engine_();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            x = engine_();
            m = static_cast<__uint128_t>(x) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double RngStream::normal() { return normal_quantile(uniform()); }

void RngStream::permutation(std::span<std::size_t> order) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = order.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(below(i));
        std::swap(order[i - 1], order[j]);
    }
}

}  // namespace gar
