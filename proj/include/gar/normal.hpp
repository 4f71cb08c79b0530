#pragma once

namespace gar {

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile for p in (0, 1).
///
/// Acklam's rational approximation followed by one Halley correction against
/// erfc; absolute error is at the 1e-15 level over the whole open interval.
/// Throws ArgumentError outside (0, 1).
double normal_quantile(double p);

/// Quantile of N(0,1) truncated to [0, 1]: Phi^-1(Phi(0) + u (Phi(1) - Phi(0))).
/// Throws ArgumentError unless u is in (0, 1).
double truncated_normal_quantile(double u);

}  // namespace gar
