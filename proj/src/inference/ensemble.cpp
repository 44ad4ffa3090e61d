#include "spartan/inference/ensemble.hpp"

#include <cmath>
#include <limits>

#include "spartan/error.hpp"

namespace spartan {

namespace {

constexpr int kPriorDrawAttempts = 100;

McmcEnsemble from_prior(const std::shared_ptr<const Dataset>& data, const HyperparameterSpace& space,
                        std::size_t m, Rng& rng) {
  McmcEnsemble ens;
  ens.sampler_fallback = true;
  for (std::size_t i = 0; i < m; ++i) {
    for (int attempt = 0;; ++attempt) {
      std::vector<double> u = space.draw_prior(rng);
      try {
        ens.members.push_back(PosteriorSample::fit(data, space.decode(u)));
        ens.states.push_back(std::move(u));
        break;
      } catch (const NumericFailure&) {
        if (attempt + 1 >= kPriorDrawAttempts) throw;
      }
    }
  }
  ens.last_state = space.initial();
  return ens;
}

}  // namespace

double log_density_transformed(const HyperparameterSpace& space, const std::shared_ptr<const Dataset>& data,
                               std::span<const double> u) {
  const double lp = space.log_prior(u);
  if (!std::isfinite(lp)) return -std::numeric_limits<double>::infinity();
  try {
    const double lml = PosteriorSample::fit(data, space.decode(u)).log_marginal_likelihood();
    return std::isfinite(lml) ? lml + lp : -std::numeric_limits<double>::infinity();
  } catch (const NumericFailure&) {
    return -std::numeric_limits<double>::infinity();
  }
}

McmcEnsemble sample_ensemble(const std::shared_ptr<const Dataset>& data, const HyperparameterSpace& space,
                             const EnsembleOptions& options, Rng& rng,
                             const std::optional<std::vector<double>>& init) {
  if (options.samples < 1) throw InvalidArgument("sample_ensemble: need at least one sample");
  if (!data) throw InvalidArgument("sample_ensemble: null dataset");

  LogDensity density = [&space, &data](std::span<const double> u) {
    return log_density_transformed(space, data, u);
  };

  // Without data the posterior is the prior.
  if (data->empty()) return from_prior(data, space, options.samples, rng);

  std::vector<double> start = init && init->size() == space.size() ? *init : space.initial();
  if (!std::isfinite(density(start))) start = space.initial();
  if (!std::isfinite(density(start))) return from_prior(data, space, options.samples, rng);

  try {
    SliceChain chain(std::move(start), density, options.slice);
    for (std::size_t s = 0; s < options.burn_in; ++s) chain.step(rng);
    McmcEnsemble ens;
    for (std::size_t s = 0; s < options.samples; ++s) {
      chain.step(rng);
      ens.states.push_back(chain.state());
    }
    for (const auto& u : ens.states) ens.members.push_back(PosteriorSample::fit(data, space.decode(u)));
    ens.last_state = chain.state();
    return ens;
  } catch (const SamplerStuck&) {
    return from_prior(data, space, options.samples, rng);
  }
}

}  // namespace spartan
