#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace gar {

/// splitmix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) noexcept {
    return mix64(mix64(a) ^ (b + 0x632be59bd9b4e019ULL + (a << 6) + (a >> 2)));
}

/// Deterministic random stream keyed by (seed, stream_id).
///
/// The underlying engine is std::mt19937_64, whose output sequence is fixed by the
/// standard, and every distribution below is implemented here rather than taken
/// from <random> (whose distributions are implementation-defined). Identical keys
/// therefore give identical draws on every platform and thread.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_id_(stream_id), engine_(mix64(seed, stream_id)) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    /// Independent sub-stream, e.g. one per permutation or per replication.
    RngStream child(std::uint64_t index) const { return RngStream(seed_, mix64(stream_id_, index)); }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    /// Uniform integer in [0, bound), bound > 0. Rejection-free of modulo bias.
    std::uint64_t below(std::uint64_t bound);

    /// Standard normal via inverse-CDF of a uniform draw.
    double normal();
    double normal(double mean, double sd) { return mean + sd * normal(); }

    /// Uniform random permutation of {0, ..., order.size()-1} written into order.
    void permutation(std::span<std::size_t> order);

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

}  // namespace gar
