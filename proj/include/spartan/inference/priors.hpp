#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "spartan/random.hpp"
#include "spartan/surrogate/gp.hpp"

namespace spartan {

enum class ModelKind { Stationary, Spartan, Hamming };

// What the surrogate looks like and which of its hyperparameters are learned.
struct ModelSpec {
  ModelKind kind = ModelKind::Stationary;
  BaseKernel base = BaseKernel::Matern52;
  std::size_t dims = 1;
  WeightConfig weights;
  bool learn_noise = false;
  double noise_variance = kDefaultNoiseVariance;  // fixed value, or chain start when learned
  std::optional<std::vector<double>> fixed_pos;   // Spartan only: hold the local centre fixed
};

struct LogNormalPrior {
  double median = 1.0;
  double log_sd = 1.0;
};

struct PriorSpec {
  LogNormalPrior lengthscale{0.5, 1.0};
  LogNormalPrior signal_variance{1.0, 1.0};
  LogNormalPrior noise{1e-4, 2.0};
  LogNormalPrior hamming_theta{1.0, 1.0};
  // Improper density, constant in the transformed coordinates. Test use.
  bool flat = false;
};

// Bijection between Hyperparameters and an unconstrained vector: log for
// positive parameters, logit for the local centre. Coordinate order:
//   stationary: log l[d], log sv, [log noise]
//   spartan:    log l_local[d], log l_global[d], log sv_local, log sv_global,
//               logit pos[d] (unless fixed), [log noise]
//   hamming:    log theta, [log noise]
class HyperparameterSpace {
 public:
  HyperparameterSpace(ModelSpec spec, PriorSpec priors);

  std::size_t size() const { return size_; }
  const ModelSpec& spec() const { return spec_; }
  const PriorSpec& priors() const { return priors_; }

  Hyperparameters decode(std::span<const double> u) const;

  // Throws InvalidArgument when a value is outside the support (non-positive
  // scale, pos outside (0,1)).
  std::vector<double> encode(const Hyperparameters& h) const;

  // Prior medians, local centre at 0.5.
  std::vector<double> initial() const;
  std::vector<double> draw_prior(Rng& rng) const;

  // Log prior density of u in the transformed coordinates, Jacobians
  // included. Zero everywhere under a flat PriorSpec.
  double log_prior(std::span<const double> u) const;

 private:
  ModelSpec spec_;
  PriorSpec priors_;
  std::size_t size_ = 0;
};

// log marginal likelihood + log prior in transformed coordinates; -inf when
// the parameters are outside the support or the fit fails numerically.
double log_posterior_density(const Hyperparameters& h, const std::shared_ptr<const Dataset>& data,
                             const HyperparameterSpace& space);

}  // namespace spartan
