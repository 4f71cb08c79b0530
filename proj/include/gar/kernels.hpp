#pragma once

// Dense double-array kernels behind the quantile-grid and Log-Cholesky geometry.
//
// Every kernel has a scalar reference implementation and, where the CPU allows,
// an AVX2/FMA variant. The variant is picked once at startup; GAR_SIMD=scalar in
// the environment or set_backend() forces the reference path. Results of the two
// backends agree to rounding (summation order differs), which the equivalence
// tests pin down.

#include <cstddef>
#include <span>
#include <string_view>

namespace gar::kernels {

enum class Backend { Scalar, Avx2 };

/// Sum of (a[i] - b[i])^2.
double sum_sq_diff(std::span<const double> a, std::span<const double> b);

/// Sum of (z[i] - ((1 - t) a[i] + t b[i]))^2, without materializing the interpolant.
double sum_sq_diff_to_lerp(std::span<const double> z, std::span<const double> a,
                           std::span<const double> b, double t);

/// out[i] = (1 - t) a[i] + t b[i]. out may alias a or b.
void lerp(std::span<double> out, std::span<const double> a, std::span<const double> b, double t);

/// acc[i] += x[i]
void accumulate(std::span<double> acc, std::span<const double> x);

/// x[i] *= s
void scale(std::span<double> x, double s);

Backend active_backend() noexcept;
bool avx2_available() noexcept;
/// Switches the process-wide backend. Requesting Avx2 on a CPU without it is ignored.
void set_backend(Backend backend) noexcept;
std::string_view backend_name(Backend backend) noexcept;

namespace scalar {
double sum_sq_diff(const double* a, const double* b, std::size_t n);
double sum_sq_diff_to_lerp(const double* z, const double* a, const double* b, double t, std::size_t n);
void lerp(double* out, const double* a, const double* b, double t, std::size_t n);
void accumulate(double* acc, const double* x, std::size_t n);
void scale(double* x, double s, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double sum_sq_diff(const double* a, const double* b, std::size_t n);
double sum_sq_diff_to_lerp(const double* z, const double* a, const double* b, double t, std::size_t n);
void lerp(double* out, const double* a, const double* b, double t, std::size_t n);
void accumulate(double* acc, const double* x, std::size_t n);
void scale(double* x, double s, std::size_t n);
}  // namespace avx2
#endif

}  // namespace gar::kernels
