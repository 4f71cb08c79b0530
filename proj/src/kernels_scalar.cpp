#include "gar/kernels.hpp"

namespace gar::kernels::scalar {

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

double sum_sq_diff_to_lerp(const double* z, const double* a, const double* b, double t, std::size_t n) {
    const double s = 1.0 - t;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = z[i] - (s * a[i] + t * b[i]);
        acc += d * d;
    }
    return acc;
}

void lerp(double* out, const double* a, const double* b, double t, std::size_t n) {
    const double s = 1.0 - t;
    for (std::size_t i = 0; i < n; ++i) out[i] = s * a[i] + t * b[i];
}

void accumulate(double* acc, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += x[i];
}

void scale(double* x, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= s;
}

}  // namespace gar::kernels::scalar
