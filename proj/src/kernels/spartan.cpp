#include "spartan/kernels/spartan.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spartan/error.hpp"

namespace spartan {

namespace {

void check_unit(std::span<const double> v, const char* what) {
  for (double t : v) {
    if (!(t >= 0.0 && t <= 1.0))
      throw InvalidArgument(std::string("weights: ") + what + " outside [0,1]: " + std::to_string(t));
  }
}

double log_normal_pdf(double x, double mean, double variance) {
  const double z = x - mean;
  return -0.5 * z * z / variance - 0.5 * std::log(2.0 * std::numbers::pi * variance);
}

}  // namespace

void WeightConfig::validate() const {
  if (!(global_variance > 0.0) || !(local_variance > 0.0))
    throw InvalidArgument("WeightConfig: variances must be positive");
}

void SpartanParams::validate() const {
  local.validate();
  global_.validate();
  if (local.dims() != pos.size() || global_.dims() != pos.size())
    throw InvalidArgument("SpartanParams: dimension mismatch between pos and lengthscales");
  check_unit(pos, "pos");
}

KernelWeights weights_unchecked(std::span<const double> x, std::span<const double> pos,
                                const WeightConfig& w) {
  double log_local = 0.0;
  double log_global = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    log_local += log_normal_pdf(x[k], pos[k], w.local_variance);
    log_global += log_normal_pdf(x[k], w.global_mean, w.global_variance);
  }
  // lambda_l^2 = nu_l / (nu_l + nu_g) = 1 / (1 + exp(t)), t = log nu_g - log nu_l
  const double t = log_global - log_local;
  double local_sq;
  double global_sq;
  if (t > 0.0) {
    const double e = std::exp(-t);
    global_sq = 1.0 / (1.0 + e);
    local_sq = e / (1.0 + e);
  } else {
    const double e = std::exp(t);
    local_sq = 1.0 / (1.0 + e);
    global_sq = e / (1.0 + e);
  }
  return {std::sqrt(local_sq), std::sqrt(global_sq)};
}

KernelWeights weights(std::span<const double> x, std::span<const double> pos, const WeightConfig& w) {
  if (x.size() != pos.size()) throw InvalidArgument("weights: dimension mismatch");
  w.validate();
  check_unit(x, "x");
  check_unit(pos, "pos");
  return weights_unchecked(x, pos, w);
}

double spartan_kernel(std::span<const double> x, std::span<const double> x2, const SpartanParams& sp,
                      const WeightConfig& w, BaseKernel base) {
  const KernelWeights a = weights(x, sp.pos, w);
  const KernelWeights b = weights(x2, sp.pos, w);
  return a.local * b.local * ard_kernel(base, x, x2, sp.local) +
         a.global * b.global * ard_kernel(base, x, x2, sp.global_);
}

}  // namespace spartan
