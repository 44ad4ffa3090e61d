#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "spartan/inference/ensemble.hpp"
#include "spartan/strategies/config.hpp"
#include "spartan/strategies/trace.hpp"

namespace spartan {

struct InitialPoint {
  std::vector<double> unit;  // continuous block in [0,1]
  std::vector<int> cat;
};

// Latin hypercube over the continuous block and uniform categorical levels,
// drawn from a stream that depends only on the seed. Every algorithm run with
// the same seed starts from the same design.
std::vector<InitialPoint> initial_design(const SearchSpace& space, std::size_t n, std::uint64_t seed);

ModelSpec model_spec_for(SurrogateKernel kernel, std::size_t dims, const RunConfig& cfg);

// Sequential GP-based optimizer over a [0,1]^d box: owns the data, the warm
// start of the hyperparameter chain and its random stream.
class ContinuousProposer {
 public:
  ContinuousProposer(SurrogateKernel kernel, std::size_t dims, const RunConfig& cfg, Rng& rng);

  void observe(std::span<const double> unit, double y);

  // Samples the ensemble on the current data and maximizes the acquisition.
  // `iteration` is the 1-based decision count used by EIIG annealing.
  std::vector<double> propose(std::size_t iteration);

  const Dataset& data() const { return data_; }
  const McmcEnsemble* last_ensemble() const { return last_ensemble_ ? &*last_ensemble_ : nullptr; }
  std::size_t sampler_fallbacks() const { return fallbacks_; }

 private:
  HyperparameterSpace hspace_;
  const RunConfig& cfg_;
  Rng& rng_;
  Dataset data_;
  std::optional<std::vector<double>> warm_;
  std::optional<McmcEnsemble> last_ensemble_;
  std::size_t fallbacks_ = 0;
};

// Initial design, then n_iter decisions with the surrogate chosen by
// cfg.kernel and hyperparameters marginalized by MCMC.
Trace run_bo(const Objective& f, const SearchSpace& space, const RunConfig& cfg);

// As run_bo with the Spartan local/global surrogate.
Trace run_sbo(const Objective& f, const SearchSpace& space, const RunConfig& cfg);

// BO decisions interleaved with simultaneous +/-1 perturbations of size
// c / i^gamma while i < T. Every evaluation counts against n_iter.
Trace run_spbo(const Objective& f, const SearchSpace& space, const RunConfig& cfg);

// Outer BO over the continuous block; every outer point runs an inner
// optimization over the categorical block (exhaustive when it has at most
// hbo.inner configurations, Hamming-kernel BO otherwise).
Trace run_hbo(const Objective& f, const SearchSpace& space, const RunConfig& cfg);

}  // namespace spartan
