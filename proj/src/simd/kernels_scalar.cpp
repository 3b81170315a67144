#include <cmath>
#include <cstring>

#include "heckfa/normal.hpp"
#include "heckfa/simd/kernels.hpp"

namespace heckfa::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_sq_scalar(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * a[i];
  return acc;
}

double sum_abs_scalar(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::fabs(a[i]);
  return acc;
}

void row_dots_scalar(const double* x, std::size_t n, std::size_t k,
                     std::size_t stride, const double* w, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = dot_scalar(x + i * stride, w, k);
  }
}

void col_weighted_sums_scalar(const double* x, std::size_t n, std::size_t k,
                              std::size_t stride, const double* v,
                              double* out) {
  std::memset(out, 0, k * sizeof(double));
  for (std::size_t i = 0; i < n; ++i) {
    const double vi = v[i];
    if (vi == 0.0) continue;
    const double* row = x + i * stride;
    for (std::size_t j = 0; j < k; ++j) out[j] += vi * row[j];
  }
}

void weighted_gram_scalar(const double* x, std::size_t n, std::size_t k,
                          std::size_t stride, const double* w, double* h) {
  std::memset(h, 0, k * k * sizeof(double));
  for (std::size_t i = 0; i < n; ++i) {
    const double wi = w[i];
    const double* row = x + i * stride;
    for (std::size_t a = 0; a < k; ++a) {
      const double f = wi * row[a];
      double* hrow = h + a * k;
      for (std::size_t b = 0; b < k; ++b) hrow[b] += f * row[b];
    }
  }
}

void norm_pdf_cdf_scalar(const double* a, std::size_t n, double* pdf,
                         double* cdf) {
  for (std::size_t i = 0; i < n; ++i) {
    pdf[i] = norm_pdf(a[i]);
    cdf[i] = norm_cdf(a[i]);
  }
}

void inverse_mills_scalar(const double* a, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = inverse_mills(a[i]);
}

const KernelTable kScalarTable = {
    "scalar",
    dot_scalar,
    sum_sq_scalar,
    sum_abs_scalar,
    row_dots_scalar,
    col_weighted_sums_scalar,
    weighted_gram_scalar,
    norm_pdf_cdf_scalar,
    inverse_mills_scalar,
};

}  // namespace

const KernelTable& scalar() { return kScalarTable; }

}  // namespace heckfa::kernels
