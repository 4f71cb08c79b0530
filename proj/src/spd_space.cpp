#include "gar/spd_space.hpp"

#include "gar/detail/coordinate_mean.hpp"
#include "gar/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gar {
namespace {

void check_dims(const SpdPoint& a, const SpdPoint& b, const char* what) {
    if (a.dim() != b.dim()) {
        throw ArgumentError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()) + ")");
    }
}

}  // namespace

DenseMatrix DenseMatrix::identity(std::size_t size) {
    DenseMatrix m(size);
    for (std::size_t i = 0; i < size; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag) {
    DenseMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

SpdPoint::SpdPoint(std::size_t p) : p_(p), coords_(p * (p + 1) / 2, 0.0) {
    if (p == 0) throw ArgumentError("SpdPoint: dimension must be positive");
}

SpdPoint::SpdPoint(std::size_t p, std::span<const double> strict_lower, std::span<const double> log_diag)
    : SpdPoint(p) {
    if (strict_lower.size() != lower_count() || log_diag.size() != p) {
        throw ArgumentError("SpdPoint: coordinate counts do not match dimension " + std::to_string(p));
    }
    std::copy(strict_lower.begin(), strict_lower.end(), coords_.begin());
    std::copy(log_diag.begin(), log_diag.end(), coords_.begin() + static_cast<std::ptrdiff_t>(lower_count()));
}

double spd_distance_sq(const SpdPoint& a, const SpdPoint& b) {
    check_dims(a, b, "spd_distance");
    return kernels::sum_sq_diff(a.coords(), b.coords());
}

double spd_distance(const SpdPoint& a, const SpdPoint& b) { return std::sqrt(spd_distance_sq(a, b)); }

SpdPoint spd_geodesic(const SpdPoint& a, const SpdPoint& b, double t) {
    check_dims(a, b, "spd_geodesic");
    if (!(t >= 0.0 && t <= 1.0)) throw ArgumentError("spd_geodesic: t must lie in [0, 1]");
    if (t == 0.0) return a;
    if (t == 1.0) return b;
    SpdPoint out(a.dim());
    kernels::lerp(out.coords(), a.coords(), b.coords(), t);
    return out;
}

SpdPoint spd_mean(std::span<const SpdPoint> points) {
    if (points.empty()) throw ArgumentError("spd_mean: empty point list");
    for (const auto& p : points) check_dims(points.front(), p, "spd_mean");
    const std::vector<double> mean =
        detail::ordered_coordinate_mean(points, [](const SpdPoint& x) { return x.coords(); });
    SpdPoint out(points.front().dim());
    std::copy(mean.begin(), mean.end(), out.coords().begin());
    return out;
}

SpdPoint spd_from_matrix(const DenseMatrix& m) {
    const std::size_t p = m.n;
    if (p == 0 || m.data.size() != p * p) throw ArgumentError("spd_from_matrix: malformed matrix");

    double max_abs = 0.0;
    double trace = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        trace += m(i, i);
        for (std::size_t j = 0; j < p; ++j) {
            if (!std::isfinite(m(i, j))) throw ArgumentError("spd_from_matrix: non-finite entry");
            max_abs = std::max(max_abs, std::abs(m(i, j)));
        }
    }
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(m(i, j) - m(j, i)) > 1e-10 * std::max(1.0, max_abs)) {
                throw ArgumentError("spd_from_matrix: matrix is not symmetric");
            }
        }
    }
    const double pivot_floor = 1e-12 * trace / static_cast<double>(p);
    if (!(trace > 0.0)) throw DecompositionError("spd_from_matrix: matrix is not positive definite");

    DenseMatrix l(p);
    for (std::size_t j = 0; j < p; ++j) {
        double diag = m(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (!(diag > pivot_floor)) {
            throw DecompositionError("spd_from_matrix: matrix is not positive definite (pivot " +
                                     std::to_string(j) + ")");
        }
        const double ljj = std::sqrt(diag);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < p; ++i) {
            double s = 0.5 * (m(i, j) + m(j, i));
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / ljj;
        }
    }
    return spd_from_factor(l);
}

DenseMatrix cholesky_factor(const SpdPoint& a) {
    const std::size_t p = a.dim();
    DenseMatrix l(p);
    const auto lower = a.strict_lower();
    const auto logd = a.log_diag();
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < i; ++j) l(i, j) = lower[strict_lower_index(i, j)];
        l(i, i) = std::exp(logd[i]);
    }
    return l;
}

SpdPoint spd_from_factor(const DenseMatrix& lower) {
    const std::size_t p = lower.n;
    SpdPoint out(p);
    auto sl = out.strict_lower();
    auto ld = out.log_diag();
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < i; ++j) sl[strict_lower_index(i, j)] = lower(i, j);
        if (!(lower(i, i) > 0.0)) throw ArgumentError("spd_from_factor: diagonal must be positive");
        ld[i] = std::log(lower(i, i));
    }
    return out;
}

DenseMatrix spd_to_matrix(const SpdPoint& a) {
    const DenseMatrix l = cholesky_factor(a);
    const std::size_t p = a.dim();
    DenseMatrix m(p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k <= j; ++k) s += l(i, k) * l(j, k);
            m(i, j) = s;
            m(j, i) = s;
        }
    }
    return m;
}

SpdSpace::SpdSpace(std::size_t p) : p_(p) {
    if (p == 0) throw ArgumentError("SpdSpace: dimension must be positive");
}

double SpdSpace::distance_sq_to_geodesic(const Point& z, const Point& x, const Point& y, double t) const {
    check_dims(z, x, "distance_sq_to_geodesic");
    check_dims(x, y, "distance_sq_to_geodesic");
    return kernels::sum_sq_diff_to_lerp(z.coords(), x.coords(), y.coords(), t);
}

void SpdSpace::validate(const Point& x) const {
    if (x.dim() != p_) {
        throw ValidationError("SPD point has dimension " + std::to_string(x.dim()) + ", expected " +
                              std::to_string(p_));
    }
    for (double c : x.coords()) {
        if (!std::isfinite(c)) throw ValidationError("SPD coordinate is not finite");
    }
}

bool SpdSpace::approx_equal(const Point& x, const Point& y) const {
    double scale = 0.0;
    for (double c : x.coords()) scale = std::max(scale, std::abs(c));
    for (double c : y.coords()) scale = std::max(scale, std::abs(c));
    return distance(x, y) <= 1e-12 * (1.0 + scale);
}

}  // namespace gar
