#include "heckfa/normal.hpp"

#include <cmath>

namespace heckfa {

double norm_pdf(double x) {
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double norm_cdf(double x) {
  return 0.5 * std::erfc(-x * kInvSqrt2);
}

double inverse_mills(double a) {
  if (a > -10.0) {
    return norm_pdf(a) / norm_cdf(a);
  }
  // Asymptotic series in 1/t^2, summed until the terms stop improving. At
  // t = 10 the smallest term is ~1e-20, so truncation error is below double
  // rounding everywhere this branch is taken.
  const double t = -a;
  const double inv_t2 = 1.0 / (t * t);
  double sum = 1.0;
  double term = 1.0;
  double sign = -1.0;
  for (int k = 1; k < 64; ++k) {
    const double next = term * static_cast<double>(2 * k - 1) * inv_t2;
    if (next >= term) break;  // divergent tail of the asymptotic series
    term = next;
    sum += sign * term;
    sign = -sign;
    if (term < 1e-18 * sum) break;
  }
  return t / sum;
}

}  // namespace heckfa
