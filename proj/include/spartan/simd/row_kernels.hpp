#pragma once

#include <cstddef>

#include "spartan/kernels/ard.hpp"

namespace spartan::simd {

// One query point against a structure-of-arrays point block: coordinate k of
// point j lives at cols[k * ld + j], for j < n.
struct ArdRowArgs {
  const double* x = nullptr;
  const double* cols = nullptr;
  std::size_t n = 0;
  std::size_t ld = 0;
  std::size_t d = 0;
  const double* inv_lengthscales = nullptr;
  double signal_variance = 1.0;
  double* out = nullptr;
};

// out[j] = scale_l * lam_l[j] * k_l[j] + scale_g * lam_g[j] * k_g[j]
struct WeightedSumArgs {
  const double* k_local = nullptr;
  const double* k_global = nullptr;
  const double* lam_local = nullptr;
  const double* lam_global = nullptr;
  double scale_local = 1.0;
  double scale_global = 1.0;
  std::size_t n = 0;
  double* out = nullptr;
};

namespace scalar {
void se_row(const ArdRowArgs& args);
void matern52_row(const ArdRowArgs& args);
void weighted_sum(const WeightedSumArgs& args);
void exp_batch(const double* in, double* out, std::size_t n);
}  // namespace scalar

#if defined(SPARTAN_HAVE_AVX2)
namespace avx2 {
void se_row(const ArdRowArgs& args);
void matern52_row(const ArdRowArgs& args);
void weighted_sum(const WeightedSumArgs& args);
void exp_batch(const double* in, double* out, std::size_t n);
}  // namespace avx2
#endif

// Dispatched through active_backend().
void ard_row(BaseKernel base, const ArdRowArgs& args);
void weighted_sum(const WeightedSumArgs& args);

}  // namespace spartan::simd
