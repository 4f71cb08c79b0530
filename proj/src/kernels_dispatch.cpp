#include "gar/kernels.hpp"

#include <atomic>
#include <cassert>
#include <cstdlib>
#include <cstring>

namespace gar::kernels {
namespace {

struct Table {
    Backend backend;
    double (*sum_sq_diff)(const double*, const double*, std::size_t);
    double (*sum_sq_diff_to_lerp)(const double*, const double*, const double*, double, std::size_t);
    void (*lerp)(double*, const double*, const double*, double, std::size_t);
    void (*accumulate)(double*, const double*, std::size_t);
    void (*scale)(double*, double, std::size_t);
};

constexpr Table kScalar{Backend::Scalar, scalar::sum_sq_diff, scalar::sum_sq_diff_to_lerp,
                        scalar::lerp, scalar::accumulate, scalar::scale};

#if defined(__x86_64__) || defined(_M_X64)
constexpr Table kAvx2{Backend::Avx2, avx2::sum_sq_diff, avx2::sum_sq_diff_to_lerp,
                      avx2::lerp, avx2::accumulate, avx2::scale};
#endif

bool detect_avx2() noexcept {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(__GNUC__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Table* initial_table() noexcept {
    const char* env = std::getenv("GAR_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return &kScalar;
#if defined(__x86_64__) || defined(_M_X64)
    if (detect_avx2()) return &kAvx2;
#endif
    return &kScalar;
}

std::atomic<const Table*>& table() noexcept {
    static std::atomic<const Table*> t{initial_table()};
    return t;
}

inline const Table& current() noexcept { return *table().load(std::memory_order_relaxed); }

}  // namespace

double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    return current().sum_sq_diff(a.data(), b.data(), a.size());
}

double sum_sq_diff_to_lerp(std::span<const double> z, std::span<const double> a,
                           std::span<const double> b, double t) {
    assert(z.size() == a.size() && a.size() == b.size());
    return current().sum_sq_diff_to_lerp(z.data(), a.data(), b.data(), t, z.size());
}

void lerp(std::span<double> out, std::span<const double> a, std::span<const double> b, double t) {
    assert(out.size() == a.size() && a.size() == b.size());
    current().lerp(out.data(), a.data(), b.data(), t, out.size());
}

void accumulate(std::span<double> acc, std::span<const double> x) {
    assert(acc.size() == x.size());
    current().accumulate(acc.data(), x.data(), acc.size());
}

void scale(std::span<double> x, double s) { current().scale(x.data(), s, x.size()); }

Backend active_backend() noexcept { return current().backend; }

bool avx2_available() noexcept {
    static const bool available = detect_avx2();
    return available;
}

void set_backend(Backend backend) noexcept {
#if defined(__x86_64__) || defined(_M_X64)
    if (backend == Backend::Avx2 && avx2_available()) {
        table().store(&kAvx2);
        return;
    }
#endif
    if (backend == Backend::Scalar) table().store(&kScalar);
}

std::string_view backend_name(Backend backend) noexcept {
    switch (backend) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
    }
    return "unknown";
}

}  // namespace gar::kernels
