#pragma once

#include <span>
#include <vector>

#include "spartan/kernels/ard.hpp"

namespace spartan {

// Per-dimension Gaussian weighting functions. The global weight is centred at
// global_mean; the local weight is centred at the learned position. Both
// variances are variances, not standard deviations.
struct WeightConfig {
  double global_mean = 0.5;
  double global_variance = 10.0;
  double local_variance = 0.05;

  void validate() const;
};

struct SpartanParams {
  ArdParams local;
  ArdParams global_;
  std::vector<double> pos;  // centre of the local weighting, in [0,1]^d

  std::size_t dims() const { return pos.size(); }
  void validate() const;
};

struct KernelWeights {
  double local = 0.0;
  double global = 0.0;
};

// log nu_local(x) - log nu_global(x) is what decides the split; each nu is a
// product of normalized univariate Gaussian densities. The returned weights
// satisfy local^2 + global^2 == 1.
KernelWeights weights(std::span<const double> x, std::span<const double> pos, const WeightConfig& w);

// Same as weights() without the range checks; used on hot paths where inputs
// are already known to be inside the unit box.
KernelWeights weights_unchecked(std::span<const double> x, std::span<const double> pos,
                                const WeightConfig& w);

double spartan_kernel(std::span<const double> x, std::span<const double> x2, const SpartanParams& sp,
                      const WeightConfig& w, BaseKernel base);

}  // namespace spartan
