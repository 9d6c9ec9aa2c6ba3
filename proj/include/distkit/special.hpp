#pragma once

#include <span>

namespace distkit::special {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // ln sqrt(2 pi)
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;
inline constexpr double kSqrt2 = 1.41421356237309504880;

// Standard normal cdf.
double normal_cdf(double z);

// Standard normal quantile: rational approximation followed by one Halley
// refinement step, ~1e-15 relative error. Returns +-inf at p = 1 / p = 0.
double normal_quantile(double p);

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x),
// a > 0, x >= 0. Series for x < a + 1, Lentz continued fraction otherwise.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// ln sum exp(v) with max shift; -inf for an empty or all -inf input.
double logsumexp(std::span<const double> v);

}  // namespace distkit::special
