// Compiled with -mavx2 -mfma; only reached through the runtime dispatcher.

#include "gar/kernels.hpp"

#include <immintrin.h>

namespace gar::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
        acc0 = _mm256_fmadd_pd(d0, d0, acc0);
        acc1 = _mm256_fmadd_pd(d1, d1, acc1);
    }
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc0 = _mm256_fmadd_pd(d, d, acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

double sum_sq_diff_to_lerp(const double* z, const double* a, const double* b, double t, std::size_t n) {
    const double s = 1.0 - t;
    const __m256d vs = _mm256_set1_pd(s);
    const __m256d vt = _mm256_set1_pd(t);
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d p0 = _mm256_mul_pd(vs, _mm256_loadu_pd(a + i));
        __m256d p1 = _mm256_mul_pd(vs, _mm256_loadu_pd(a + i + 4));
        p0 = _mm256_fmadd_pd(vt, _mm256_loadu_pd(b + i), p0);
        p1 = _mm256_fmadd_pd(vt, _mm256_loadu_pd(b + i + 4), p1);
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(z + i), p0);
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(z + i + 4), p1);
        acc0 = _mm256_fmadd_pd(d0, d0, acc0);
        acc1 = _mm256_fmadd_pd(d1, d1, acc1);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        const double d = z[i] - (s * a[i] + t * b[i]);
        acc += d * d;
    }
    return acc;
}

void lerp(double* out, const double* a, const double* b, double t, std::size_t n) {
    const double s = 1.0 - t;
    const __m256d vs = _mm256_set1_pd(s);
    const __m256d vt = _mm256_set1_pd(t);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d p = _mm256_mul_pd(vs, _mm256_loadu_pd(a + i));
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(vt, _mm256_loadu_pd(b + i), p));
    }
    for (; i < n; ++i) out[i] = s * a[i] + t * b[i];
}

void accumulate(double* acc, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) acc[i] += x[i];
}

void scale(double* x, double s, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(vs, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= s;
}

}  // namespace gar::kernels::avx2
