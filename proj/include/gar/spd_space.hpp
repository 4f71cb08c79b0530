#pragma once

// Symmetric positive definite matrices under the Log-Cholesky metric. A point is
// stored in the coordinates (strict lower part of the Cholesky factor, log of its
// diagonal); the metric is Euclidean in those coordinates.

#include "gar/error.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace gar {

/// Dense square matrix, row-major.
struct DenseMatrix {
    std::size_t n = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t size) : n(size), data(size * size, 0.0) {}

    static DenseMatrix identity(std::size_t size);
    static DenseMatrix diagonal(std::span<const double> diag);

    double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
};

class SpdPoint {
public:
    SpdPoint() = default;
    /// Identity matrix of dimension p.
    explicit SpdPoint(std::size_t p);
    SpdPoint(std::size_t p, std::span<const double> strict_lower, std::span<const double> log_diag);

    std::size_t dim() const noexcept { return p_; }

    /// Strict lower entries of the Cholesky factor, row-major: (1,0), (2,0), (2,1), ...
    std::span<const double> strict_lower() const noexcept { return {coords_.data(), lower_count()}; }
    std::span<double> strict_lower() noexcept { return {coords_.data(), lower_count()}; }
    std::span<const double> log_diag() const noexcept { return {coords_.data() + lower_count(), p_}; }
    std::span<double> log_diag() noexcept { return {coords_.data() + lower_count(), p_}; }

    /// All p(p+1)/2 coordinates: strict_lower followed by log_diag.
    std::span<const double> coords() const noexcept { return coords_; }
    std::span<double> coords() noexcept { return coords_; }

    friend bool operator==(const SpdPoint&, const SpdPoint&) = default;

private:
    std::size_t lower_count() const noexcept { return p_ * (p_ - 1) / 2; }

    std::size_t p_ = 0;
    std::vector<double> coords_;
};

/// Index of the strict lower entry (i, j), i > j, inside SpdPoint::strict_lower().
inline std::size_t strict_lower_index(std::size_t i, std::size_t j) { return i * (i - 1) / 2 + j; }

double spd_distance(const SpdPoint& a, const SpdPoint& b);
double spd_distance_sq(const SpdPoint& a, const SpdPoint& b);
SpdPoint spd_geodesic(const SpdPoint& a, const SpdPoint& b, double t);
SpdPoint spd_mean(std::span<const SpdPoint> points);

/// Cholesky factorization of a symmetric positive definite matrix.
/// Throws ArgumentError when asymmetric beyond 1e-10 (relative to the largest
/// entry) and DecompositionError when a pivot falls to 1e-12 * trace / p or below.
SpdPoint spd_from_matrix(const DenseMatrix& m);

/// L L^T with L rebuilt from the coordinates.
DenseMatrix spd_to_matrix(const SpdPoint& a);

/// The lower-triangular Cholesky factor as a dense matrix.
DenseMatrix cholesky_factor(const SpdPoint& a);

/// Point whose Cholesky factor is the given lower-triangular matrix (positive diagonal).
SpdPoint spd_from_factor(const DenseMatrix& lower);

class SpdSpace {
public:
    using Point = SpdPoint;
    static constexpr std::string_view tag = "spd";

    explicit SpdSpace(std::size_t p);

    std::size_t dim() const noexcept { return p_; }

    double distance(const Point& x, const Point& y) const { return spd_distance(x, y); }
    double distance_sq(const Point& x, const Point& y) const { return spd_distance_sq(x, y); }
    Point geodesic(const Point& x, const Point& y, double t) const { return spd_geodesic(x, y, t); }
    double distance_sq_to_geodesic(const Point& z, const Point& x, const Point& y, double t) const;
    Point frechet_mean(std::span<const Point> points) const { return spd_mean(points); }

    void validate(const Point& x) const;
    bool approx_equal(const Point& x, const Point& y) const;

private:
    std::size_t p_;
};

}  // namespace gar
