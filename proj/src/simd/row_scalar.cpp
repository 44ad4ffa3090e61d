#include <cmath>

#include "spartan/simd/row_kernels.hpp"

namespace spartan::simd::scalar {

namespace {

double sq_distance(const ArdRowArgs& a, std::size_t j) {
  double r2 = 0.0;
  for (std::size_t k = 0; k < a.d; ++k) {
    const double t = (a.x[k] - a.cols[k * a.ld + j]) * a.inv_lengthscales[k];
    r2 += t * t;
  }
  return r2;
}

}  // namespace

void se_row(const ArdRowArgs& a) {
  for (std::size_t j = 0; j < a.n; ++j) a.out[j] = a.signal_variance * std::exp(-0.5 * sq_distance(a, j));
}

void matern52_row(const ArdRowArgs& a) {
  for (std::size_t j = 0; j < a.n; ++j) {
    const double r2 = sq_distance(a, j);
    const double s = std::sqrt(5.0 * r2);
    a.out[j] = a.signal_variance * (1.0 + s + (5.0 / 3.0) * r2) * std::exp(-s);
  }
}

void weighted_sum(const WeightedSumArgs& a) {
  for (std::size_t j = 0; j < a.n; ++j) {
    a.out[j] = a.scale_local * a.lam_local[j] * a.k_local[j] +
               a.scale_global * a.lam_global[j] * a.k_global[j];
  }
}

void exp_batch(const double* in, double* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) out[j] = std::exp(in[j]);
}

}  // namespace spartan::simd::scalar
