#pragma once

#include <cstddef>
#include <string>

namespace heckfa::kernels {

// Batch kernels behind the hot loops: probit index/weight evaluation, IMR
// columns, residual reductions and the weighted Gram accumulation. Each entry
// has a scalar reference implementation and an AVX2 variant; the active table
// is chosen once at startup from CPUID (override with HECKFA_SIMD=scalar).
// Matrices are row-major with an explicit leading dimension (stride).
struct KernelTable {
  const char* name;

  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum_sq)(const double* a, std::size_t n);
  double (*sum_abs)(const double* a, std::size_t n);

  // out[i] = <x_row_i, w>, i = 0..n-1; w has k entries.
  void (*row_dots)(const double* x, std::size_t n, std::size_t k,
                   std::size_t stride, const double* w, double* out);

  // out[j] = sum_i v[i] * x[i, j]  (X^T v); out has k entries, overwritten.
  void (*col_weighted_sums)(const double* x, std::size_t n, std::size_t k,
                            std::size_t stride, const double* v, double* out);

  // h = sum_i w[i] * x_i x_i^T, h is k x k row-major, overwritten.
  void (*weighted_gram)(const double* x, std::size_t n, std::size_t k,
                        std::size_t stride, const double* w, double* h);

  // pdf[i] = phi(a[i]), cdf[i] = Phi(a[i]).
  void (*norm_pdf_cdf)(const double* a, std::size_t n, double* pdf,
                       double* cdf);

  // out[i] = inverse Mills ratio of a[i].
  void (*inverse_mills)(const double* a, std::size_t n, double* out);
};

const KernelTable& scalar();

// nullptr when this build or CPU lacks AVX2+FMA.
const KernelTable* avx2();

const KernelTable& active();

// Convenience wrappers through the active table.
inline double dot(const double* a, const double* b, std::size_t n) {
  return active().dot(a, b, n);
}
inline double sum_sq(const double* a, std::size_t n) {
  return active().sum_sq(a, n);
}
inline double sum_abs(const double* a, std::size_t n) {
  return active().sum_abs(a, n);
}
inline void row_dots(const double* x, std::size_t n, std::size_t k,
                     std::size_t stride, const double* w, double* out) {
  active().row_dots(x, n, k, stride, w, out);
}
inline void col_weighted_sums(const double* x, std::size_t n, std::size_t k,
                              std::size_t stride, const double* v,
                              double* out) {
  active().col_weighted_sums(x, n, k, stride, v, out);
}
inline void weighted_gram(const double* x, std::size_t n, std::size_t k,
                          std::size_t stride, const double* w, double* h) {
  active().weighted_gram(x, n, k, stride, w, h);
}
inline void norm_pdf_cdf(const double* a, std::size_t n, double* pdf,
                         double* cdf) {
  active().norm_pdf_cdf(a, n, pdf, cdf);
}
inline void inverse_mills(const double* a, std::size_t n, double* out) {
  active().inverse_mills(a, n, out);
}

}  // namespace heckfa::kernels
