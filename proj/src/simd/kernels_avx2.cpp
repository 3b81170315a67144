// AVX2+FMA kernel variants. This file is compiled with -mavx2 -mfma; nothing
// here may run unless dispatch.cpp verified CPU support first.

#include "heckfa/normal.hpp"
#include "heckfa/simd/kernels.hpp"

#if defined(HECKFA_BUILD_AVX2)

#include <immintrin.h>

#include <cmath>
#include <cstring>

namespace heckfa::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

// ---------------------------------------------------------------------------
// exp for non-positive arguments (cephes-style P/Q rational, 2^n scaling).
// Arguments below -708.39 flush to zero; callers never pass positives larger
// than 0, so the overflow side is not handled.
// ---------------------------------------------------------------------------
inline __m256d exp_pd(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);
  const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
  const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
  const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
  const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
  const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
  const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
  const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);
  const __m256d underflow = _mm256_set1_pd(-708.39);

  const __m256d too_small = _mm256_cmp_pd(x, underflow, _CMP_LT_OQ);
  x = _mm256_max_pd(x, underflow);  // keeps the scaling path in range

  __m256d nf = _mm256_round_pd(_mm256_fmadd_pd(x, log2e, _mm256_set1_pd(0.5)),
                               _MM_FROUND_TO_NEG_INF | _MM_FROUND_NO_EXC);
  x = _mm256_fnmadd_pd(nf, c1, x);
  x = _mm256_fnmadd_pd(nf, c2, x);

  const __m256d xx = _mm256_mul_pd(x, x);
  __m256d px = _mm256_fmadd_pd(p0, xx, p1);
  px = _mm256_fmadd_pd(px, xx, p2);
  px = _mm256_mul_pd(px, x);
  __m256d qx = _mm256_fmadd_pd(q0, xx, q1);
  qx = _mm256_fmadd_pd(qx, xx, q2);
  qx = _mm256_fmadd_pd(qx, xx, q3);
  __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
  e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

  // 2^n via exponent bits; n stays within [-1022, 1].
  const __m128i n32 = _mm256_cvtpd_epi32(nf);
  const __m256i n64 = _mm256_cvtepi32_epi64(n32);
  const __m256i bits =
      _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  e = _mm256_mul_pd(e, _mm256_castsi256_pd(bits));

  return _mm256_andnot_pd(too_small, e);
}

// ---------------------------------------------------------------------------
// erfc via the SPECFUN/Cody rational approximations, all regions evaluated
// and blended. Relative accuracy ~1e-16 for x in [-6, 26.5]; beyond 26.5 the
// positive tail flushes to 0 with exp underflow (true value < 1e-310).
// ---------------------------------------------------------------------------
inline __m256d erfc_pd(__m256d x) {
  const __m256d z = _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);  // |x|
  const __m256d zsq = _mm256_mul_pd(z, z);

  // |x| <= 0.46875: erfc = 1 - x * A(z^2)/B(z^2)
  __m256d xnum = _mm256_mul_pd(_mm256_set1_pd(1.85777706184603153e-1), zsq);
  __m256d xden = zsq;
  xnum = _mm256_mul_pd(_mm256_add_pd(xnum, _mm256_set1_pd(3.16112374387056560e0)), zsq);
  xden = _mm256_mul_pd(_mm256_add_pd(xden, _mm256_set1_pd(2.36012909523441209e1)), zsq);
  xnum = _mm256_mul_pd(_mm256_add_pd(xnum, _mm256_set1_pd(1.13864154151050156e2)), zsq);
  xden = _mm256_mul_pd(_mm256_add_pd(xden, _mm256_set1_pd(2.44024637934444173e2)), zsq);
  xnum = _mm256_mul_pd(_mm256_add_pd(xnum, _mm256_set1_pd(3.77485237685302021e2)), zsq);
  xden = _mm256_mul_pd(_mm256_add_pd(xden, _mm256_set1_pd(1.28261652607737228e3)), zsq);
  const __m256d erf_small = _mm256_div_pd(
      _mm256_mul_pd(x, _mm256_add_pd(xnum, _mm256_set1_pd(3.20937758913846947e3))),
      _mm256_add_pd(xden, _mm256_set1_pd(2.84423683343917062e3)));
  const __m256d erfc_r1 = _mm256_sub_pd(_mm256_set1_pd(1.0), erf_small);

  // 0.46875 < |x| <= 4: erfc = exp(-z^2) * C(z)/D(z)
  __m256d cnum = _mm256_mul_pd(_mm256_set1_pd(2.15311535474403846e-8), z);
  __m256d cden = z;
  const double cc[7] = {5.64188496988670089e-1, 8.88314979438837594e0,
                        6.61191906371416295e1,  2.98635138197400131e2,
                        8.81952221241769090e2,  1.71204761263407058e3,
                        2.05107837782607147e3};
  const double dd[7] = {1.57449261107098347e1, 1.17693950891312499e2,
                        5.37181101862009858e2, 1.62138957456669019e3,
                        3.29079923573345963e3, 4.36261909014324716e3,
                        3.43936767414372164e3};
  for (int i = 0; i < 7; ++i) {
    cnum = _mm256_mul_pd(_mm256_add_pd(cnum, _mm256_set1_pd(cc[i])), z);
    cden = _mm256_mul_pd(_mm256_add_pd(cden, _mm256_set1_pd(dd[i])), z);
  }
  const __m256d ratio_mid = _mm256_div_pd(
      _mm256_add_pd(cnum, _mm256_set1_pd(1.23033935479799725e3)),
      _mm256_add_pd(cden, _mm256_set1_pd(1.23033935480374942e3)));

  // |x| > 4: erfc = exp(-z^2)/z * (1/sqrt(pi) - P(1/z^2)/Q(1/z^2) / z^2)
  const __m256d safe_z = _mm256_max_pd(z, _mm256_set1_pd(0.46875));
  const __m256d inv_zsq =
      _mm256_div_pd(_mm256_set1_pd(1.0), _mm256_mul_pd(safe_z, safe_z));
  __m256d pnum = _mm256_mul_pd(_mm256_set1_pd(1.63153871373020978e-2), inv_zsq);
  __m256d pden = inv_zsq;
  const double pp[4] = {3.05326634961232344e-1, 3.60344899949804439e-1,
                        1.25781726111229246e-1, 1.60837851487422766e-2};
  const double qq[4] = {2.56852019228982242e0, 1.87295284992346047e0,
                        5.27905102951428412e-1, 6.05183413124413191e-2};
  for (int i = 0; i < 4; ++i) {
    pnum = _mm256_mul_pd(_mm256_add_pd(pnum, _mm256_set1_pd(pp[i])), inv_zsq);
    pden = _mm256_mul_pd(_mm256_add_pd(pden, _mm256_set1_pd(qq[i])), inv_zsq);
  }
  __m256d r = _mm256_div_pd(
      _mm256_mul_pd(inv_zsq, _mm256_add_pd(pnum, _mm256_set1_pd(6.58749161529837803e-4))),
      _mm256_add_pd(pden, _mm256_set1_pd(2.33520497626869185e-3)));
  const __m256d ratio_far = _mm256_div_pd(
      _mm256_sub_pd(_mm256_set1_pd(5.6418958354775628695e-1), r), safe_z);

  // shared two-part exp(-z^2): zt = trunc(16 z)/16, del = (z-zt)(z+zt)
  const __m256d zt = _mm256_mul_pd(
      _mm256_round_pd(_mm256_mul_pd(z, _mm256_set1_pd(16.0)),
                      _MM_FROUND_TO_ZERO | _MM_FROUND_NO_EXC),
      _mm256_set1_pd(0.0625));
  const __m256d del =
      _mm256_mul_pd(_mm256_sub_pd(z, zt), _mm256_add_pd(z, zt));
  const __m256d escale = _mm256_mul_pd(
      exp_pd(_mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(zt, zt))),
      exp_pd(_mm256_sub_pd(_mm256_setzero_pd(), del)));

  const __m256d in_r1 = _mm256_cmp_pd(z, _mm256_set1_pd(0.46875), _CMP_LE_OQ);
  const __m256d in_r2 = _mm256_cmp_pd(z, _mm256_set1_pd(4.0), _CMP_LE_OQ);
  __m256d erfc_pos = _mm256_mul_pd(
      escale, _mm256_blendv_pd(ratio_far, ratio_mid, in_r2));
  erfc_pos = _mm256_blendv_pd(erfc_pos, erfc_r1, in_r1);

  // x < 0: erfc(x) = 2 - erfc(-x)
  const __m256d neg = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_LT_OQ);
  const __m256d reflected = _mm256_sub_pd(_mm256_set1_pd(2.0), erfc_pos);
  return _mm256_blendv_pd(erfc_pos, reflected, neg);
}

inline __m256d norm_cdf_pd(__m256d x) {
  const __m256d arg = _mm256_mul_pd(x, _mm256_set1_pd(-kInvSqrt2));
  return _mm256_mul_pd(_mm256_set1_pd(0.5), erfc_pd(arg));
}

inline __m256d norm_pdf_pd(__m256d x) {
  // same operation order as the scalar reference: (-0.5 * x) * x
  const __m256d arg =
      _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(-0.5), x), x);
  return _mm256_mul_pd(_mm256_set1_pd(kInvSqrt2Pi), exp_pd(arg));
}

// ---------------------------------------------------------------------------
// reductions and matrix helpers
// ---------------------------------------------------------------------------

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_sq_avx2(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(a + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * a[i];
  return s;
}

double sum_abs_avx2(const double* a, std::size_t n) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(a + i)));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::fabs(a[i]);
  return s;
}

void row_dots_avx2(const double* x, std::size_t n, std::size_t k,
                   std::size_t stride, const double* w, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = dot_avx2(x + i * stride, w, k);
  }
}

void col_weighted_sums_avx2(const double* x, std::size_t n, std::size_t k,
                            std::size_t stride, const double* v, double* out) {
  std::memset(out, 0, k * sizeof(double));
  for (std::size_t i = 0; i < n; ++i) {
    const double vi = v[i];
    if (vi == 0.0) continue;
    const __m256d vv = _mm256_set1_pd(vi);
    const double* row = x + i * stride;
    std::size_t j = 0;
    for (; j + 4 <= k; j += 4) {
      const __m256d acc = _mm256_fmadd_pd(vv, _mm256_loadu_pd(row + j),
                                          _mm256_loadu_pd(out + j));
      _mm256_storeu_pd(out + j, acc);
    }
    for (; j < k; ++j) out[j] += vi * row[j];
  }
}

void weighted_gram_avx2(const double* x, std::size_t n, std::size_t k,
                        std::size_t stride, const double* w, double* h) {
  std::memset(h, 0, k * k * sizeof(double));
  for (std::size_t i = 0; i < n; ++i) {
    const double wi = w[i];
    const double* row = x + i * stride;
    for (std::size_t a = 0; a < k; ++a) {
      const double f = wi * row[a];
      const __m256d ff = _mm256_set1_pd(f);
      double* hrow = h + a * k;
      std::size_t b = 0;
      for (; b + 4 <= k; b += 4) {
        const __m256d acc = _mm256_fmadd_pd(ff, _mm256_loadu_pd(row + b),
                                            _mm256_loadu_pd(hrow + b));
        _mm256_storeu_pd(hrow + b, acc);
      }
      for (; b < k; ++b) hrow[b] += f * row[b];
    }
  }
}

void norm_pdf_cdf_avx2(const double* a, std::size_t n, double* pdf,
                       double* cdf) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(a + i);
    _mm256_storeu_pd(pdf + i, norm_pdf_pd(v));
    _mm256_storeu_pd(cdf + i, norm_cdf_pd(v));
  }
  for (; i < n; ++i) {
    pdf[i] = norm_pdf(a[i]);
    cdf[i] = norm_cdf(a[i]);
  }
}

void inverse_mills_avx2(const double* a, std::size_t n, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(a + i);
    const __m256d ratio = _mm256_div_pd(norm_pdf_pd(v), norm_cdf_pd(v));
    _mm256_storeu_pd(out + i, ratio);
    // deep-tail lanes switch to the scalar asymptotic branch
    const int tail =
        _mm256_movemask_pd(_mm256_cmp_pd(v, _mm256_set1_pd(-10.0), _CMP_LE_OQ));
    if (tail) {
      for (int lane = 0; lane < 4; ++lane) {
        if (tail & (1 << lane)) out[i + lane] = inverse_mills(a[i + lane]);
      }
    }
  }
  for (; i < n; ++i) out[i] = inverse_mills(a[i]);
}

const KernelTable kAvx2Table = {
    "avx2",
    dot_avx2,
    sum_sq_avx2,
    sum_abs_avx2,
    row_dots_avx2,
    col_weighted_sums_avx2,
    weighted_gram_avx2,
    norm_pdf_cdf_avx2,
    inverse_mills_avx2,
};

}  // namespace

const KernelTable* avx2_table_if_built() { return &kAvx2Table; }

}  // namespace heckfa::kernels

#else  // !HECKFA_BUILD_AVX2

namespace heckfa::kernels {
const KernelTable* avx2_table_if_built() { return nullptr; }
}  // namespace heckfa::kernels

#endif
