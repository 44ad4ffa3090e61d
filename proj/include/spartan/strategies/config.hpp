#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "spartan/acquisition/criteria.hpp"
#include "spartan/inference/priors.hpp"

namespace spartan {

enum class SurrogateKernel { Matern52Ard, SeArd, Spartan };

std::string_view to_string(SurrogateKernel k);
std::optional<SurrogateKernel> parse_surrogate_kernel(std::string_view s);

struct SpboConfig {
  double c = 0.1;                   // perturbation size at i = 1, unit coordinates
  double gamma = 0.101;             // decay exponent of c / i^gamma
  std::optional<std::size_t> T;     // perturb while i < T; default ceil(n_iter / 4)
};

struct HboConfig {
  std::size_t outer = 30;           // N_c
  std::size_t inner = 4;            // N_d
  bool reevaluate = false;          // spend one extra evaluation at the inner optimum
  SurrogateKernel outer_kernel = SurrogateKernel::Spartan;
};

struct RunConfig {
  std::size_t n_init = 10;
  std::size_t n_iter = 40;          // objective evaluations after the initial design
  std::size_t mcmc_samples = 10;
  std::size_t burn_in = 100;
  AcquisitionConfig acquisition;
  // Zero means 500*d candidates / 50*d refinement evaluations.
  std::size_t candidates = 0;
  std::size_t refine_evaluations = 0;
  SurrogateKernel kernel = SurrogateKernel::Matern52Ard;
  WeightConfig weights;
  PriorSpec priors;
  bool learn_noise = false;
  double noise_variance = kDefaultNoiseVariance;
  std::optional<std::vector<double>> fixed_pos;  // Spartan: hold the local centre fixed
  SpboConfig spbo;
  HboConfig hbo;
  std::uint64_t seed = 0;
  bool record_wall_time = true;

  void validate() const;
  MaximizerBudget budget_for(std::size_t dims) const;
  std::size_t spbo_T() const { return spbo.T.value_or((n_iter + 3) / 4); }
};

// Raw continuous coordinates and categorical levels in; value to minimize out.
using Objective = std::function<double(std::span<const double>, std::span<const int>)>;

}  // namespace spartan
