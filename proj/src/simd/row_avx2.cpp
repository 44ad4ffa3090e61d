// Compiled with -mavx2 -mfma. Only reached when the CPU reports both.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "spartan/simd/row_kernels.hpp"

namespace spartan::simd::avx2 {

namespace {

// Cephes-style exp: range reduction by ln2 with a two-part constant, then a
// (3,3) rational approximation on [-ln2/2, ln2/2]. Inputs below the double
// underflow threshold return 0.
inline __m256d exp_pd(__m256d x) {
  const __m256d hi = _mm256_set1_pd(709.78271289338397);
  const __m256d lo = _mm256_set1_pd(-708.39641853226408);
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);
  const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
  const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
  const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
  const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
  const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
  const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
  const __m256d q3 = _mm256_set1_pd(2.00000000000000000009e0);
  const __m256d one = _mm256_set1_pd(1.0);

  const __m256d underflow = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
  x = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

  const __m256d fx = _mm256_round_pd(_mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  x = _mm256_fnmadd_pd(fx, c1, x);
  x = _mm256_fnmadd_pd(fx, c2, x);

  const __m256d xx = _mm256_mul_pd(x, x);
  __m256d px = _mm256_fmadd_pd(p0, xx, p1);
  px = _mm256_fmadd_pd(px, xx, p2);
  px = _mm256_mul_pd(px, x);
  __m256d qx = _mm256_fmadd_pd(q0, xx, q1);
  qx = _mm256_fmadd_pd(qx, xx, q2);
  qx = _mm256_fmadd_pd(qx, xx, q3);
  __m256d r = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
  r = _mm256_fmadd_pd(_mm256_set1_pd(2.0), r, one);

  // 2^fx assembled in the exponent field.
  __m128i n32 = _mm256_cvtpd_epi32(fx);
  __m256i n64 = _mm256_cvtepi32_epi64(n32);
  n64 = _mm256_add_epi64(n64, _mm256_set1_epi64x(1023));
  n64 = _mm256_slli_epi64(n64, 52);
  r = _mm256_mul_pd(r, _mm256_castsi256_pd(n64));
  return _mm256_andnot_pd(underflow, r);
}

inline __m256d sq_distance4(const ArdRowArgs& a, std::size_t j) {
  __m256d r2 = _mm256_setzero_pd();
  for (std::size_t k = 0; k < a.d; ++k) {
    const __m256d col = _mm256_loadu_pd(a.cols + k * a.ld + j);
    const __m256d diff = _mm256_sub_pd(_mm256_set1_pd(a.x[k]), col);
    const __m256d t = _mm256_mul_pd(diff, _mm256_set1_pd(a.inv_lengthscales[k]));
    r2 = _mm256_fmadd_pd(t, t, r2);
  }
  return r2;
}

inline __m256d se4(__m256d r2, __m256d sv) {
  return _mm256_mul_pd(sv, exp_pd(_mm256_mul_pd(_mm256_set1_pd(-0.5), r2)));
}

inline __m256d matern4(__m256d r2, __m256d sv) {
  const __m256d s = _mm256_sqrt_pd(_mm256_mul_pd(_mm256_set1_pd(5.0), r2));
  __m256d poly = _mm256_add_pd(_mm256_set1_pd(1.0), s);
  poly = _mm256_fmadd_pd(_mm256_set1_pd(5.0 / 3.0), r2, poly);
  const __m256d e = exp_pd(_mm256_sub_pd(_mm256_setzero_pd(), s));
  return _mm256_mul_pd(sv, _mm256_mul_pd(poly, e));
}

// Runs the 4-wide body, then repacks the n % 4 tail into a padded block so
// every element goes through the same arithmetic.
template <class Body>
void row_impl(const ArdRowArgs& a, Body body) {
  const __m256d sv = _mm256_set1_pd(a.signal_variance);
  std::size_t j = 0;
  for (; j + 4 <= a.n; j += 4) _mm256_storeu_pd(a.out + j, body(sq_distance4(a, j), sv));
  if (j == a.n) return;
  const std::size_t rem = a.n - j;
  alignas(32) double block[4];
  __m256d r2 = _mm256_setzero_pd();
  for (std::size_t k = 0; k < a.d; ++k) {
    block[0] = block[1] = block[2] = block[3] = a.x[k];
    for (std::size_t t = 0; t < rem; ++t) block[t] = a.cols[k * a.ld + j + t];
    const __m256d diff = _mm256_sub_pd(_mm256_set1_pd(a.x[k]), _mm256_load_pd(block));
    const __m256d t = _mm256_mul_pd(diff, _mm256_set1_pd(a.inv_lengthscales[k]));
    r2 = _mm256_fmadd_pd(t, t, r2);
  }
  _mm256_store_pd(block, body(r2, sv));
  std::copy_n(block, rem, a.out + j);
}

}  // namespace

void se_row(const ArdRowArgs& a) { row_impl(a, se4); }

void matern52_row(const ArdRowArgs& a) { row_impl(a, matern4); }

void weighted_sum(const WeightedSumArgs& a) {
  const __m256d sl = _mm256_set1_pd(a.scale_local);
  const __m256d sg = _mm256_set1_pd(a.scale_global);
  std::size_t j = 0;
  for (; j + 4 <= a.n; j += 4) {
    const __m256d l = _mm256_mul_pd(_mm256_mul_pd(sl, _mm256_loadu_pd(a.lam_local + j)), _mm256_loadu_pd(a.k_local + j));
    const __m256d g = _mm256_mul_pd(_mm256_mul_pd(sg, _mm256_loadu_pd(a.lam_global + j)), _mm256_loadu_pd(a.k_global + j));
    _mm256_storeu_pd(a.out + j, _mm256_add_pd(l, g));
  }
  for (; j < a.n; ++j) {
    a.out[j] = a.scale_local * a.lam_local[j] * a.k_local[j] + a.scale_global * a.lam_global[j] * a.k_global[j];
  }
}

void exp_batch(const double* in, double* out, std::size_t n) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) _mm256_storeu_pd(out + j, exp_pd(_mm256_loadu_pd(in + j)));
  if (j == n) return;
  alignas(32) double block[4] = {0.0, 0.0, 0.0, 0.0};
  std::copy_n(in + j, n - j, block);
  _mm256_store_pd(block, exp_pd(_mm256_load_pd(block)));
  std::copy_n(block, n - j, out + j);
}

}  // namespace spartan::simd::avx2
