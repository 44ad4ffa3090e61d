#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "spartan/inference/priors.hpp"
#include "spartan/inference/slice.hpp"
#include "spartan/surrogate/gp.hpp"

namespace spartan {

struct EnsembleOptions {
  std::size_t samples = 10;   // m
  std::size_t burn_in = 100;  // sweeps discarded before collection
  SliceOptions slice;
};

// m posterior samples standing in for the hyperparameter-marginalized GP.
struct McmcEnsemble {
  std::vector<PosteriorSample> members;
  std::vector<std::vector<double>> states;  // transformed coordinates, one per member
  std::vector<double> last_state;           // warm start for the next call
  bool sampler_fallback = false;            // members are prior draws after SamplerStuck

  std::size_t size() const { return members.size(); }
};

// Runs burn_in slice sweeps from `init` (or the prior medians), then collects
// `samples` consecutive states and fits one PosteriorSample per state. If the
// sampler gets stuck, members are drawn from the prior instead and
// sampler_fallback is set.
McmcEnsemble sample_ensemble(const std::shared_ptr<const Dataset>& data, const HyperparameterSpace& space,
                             const EnsembleOptions& options, Rng& rng,
                             const std::optional<std::vector<double>>& init = std::nullopt);

// log prior + log marginal likelihood of a transformed vector; -inf when the
// fit fails.
double log_density_transformed(const HyperparameterSpace& space, const std::shared_ptr<const Dataset>& data,
                               std::span<const double> u);

}  // namespace spartan
