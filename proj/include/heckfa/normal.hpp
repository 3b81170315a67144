#pragma once

namespace heckfa {

inline constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599344;
inline constexpr double kInvSqrt2 = 0.7071067811865475244008443621048;

// Standard normal density.
double norm_pdf(double x);

// Standard normal CDF via erfc; accurate in both tails down to ~1e-300.
double norm_cdf(double x);

// Inverse Mills ratio lambda(a) = pdf(a) / cdf(a). Strictly positive and
// strictly decreasing. Direct ratio for a > -10; for a <= -10 the ratio is
// 0/0 in floating point long before either factor underflows alone, so the
// deep tail uses the adaptively truncated Mills asymptotic series
//   lambda(-t) = t / (1 - 1/t^2 + 3/t^4 - 15/t^6 + ...),  t = -a.
double inverse_mills(double a);

}  // namespace heckfa
