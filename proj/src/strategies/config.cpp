#include "spartan/strategies/config.hpp"

#include "spartan/error.hpp"

namespace spartan {

std::string_view to_string(SurrogateKernel k) {
  switch (k) {
    case SurrogateKernel::Matern52Ard:
      return "matern52-ard";
    case SurrogateKernel::SeArd:
      return "se-ard";
    case SurrogateKernel::Spartan:
      return "spartan";
  }
  return "unknown";
}

std::optional<SurrogateKernel> parse_surrogate_kernel(std::string_view s) {
  for (auto k : {SurrogateKernel::Matern52Ard, SurrogateKernel::SeArd, SurrogateKernel::Spartan}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

void RunConfig::validate() const {
  if (n_init < 1) throw InvalidArgument("RunConfig: n_init must be >= 1");
  if (n_iter < 1) throw InvalidArgument("RunConfig: n_iter must be >= 1");
  if (mcmc_samples < 1) throw InvalidArgument("RunConfig: mcmc_samples must be >= 1");
  if (!(spbo.c > 0.0)) throw InvalidArgument("RunConfig: spbo.c must be positive");
  if (!(spbo.gamma > 0.0 && spbo.gamma <= 1.0)) throw InvalidArgument("RunConfig: spbo.gamma must be in (0,1]");
  if (hbo.outer < 1 || hbo.inner < 1) throw InvalidArgument("RunConfig: hbo budgets must be >= 1");
  if (!(noise_variance >= 0.0)) throw InvalidArgument("RunConfig: negative noise variance");
  weights.validate();
  acquisition.validate();
}

MaximizerBudget RunConfig::budget_for(std::size_t dims) const {
  MaximizerBudget b = MaximizerBudget::for_dims(dims);
  if (candidates > 0) b.candidates = candidates;
  if (refine_evaluations > 0) b.refine_evaluations = refine_evaluations;
  b.initial_step = acquisition.budget.initial_step;
  return b;
}

}  // namespace spartan
