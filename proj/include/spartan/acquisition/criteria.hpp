#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "spartan/inference/ensemble.hpp"
#include "spartan/surrogate/gp.hpp"

namespace spartan {

// Per-member predictions (mu_i, sigma2_i) at one input, in ensemble order.
struct PredictionSet {
  std::vector<Prediction> members;

  std::size_t size() const { return members.size(); }
  double mean_mu() const;
};

enum class AcquisitionKind { EI, EIIG };

// entropy: moment-matched mixture entropy minus mean member entropy.
// verbatim: -log(sum_i[(mu_i - mu_hat)^2 + s2_i]) + sum_i log s2_i, sums not means.
enum class InfoGainMode { Entropy, Verbatim };

std::string_view to_string(AcquisitionKind kind);
std::string_view to_string(InfoGainMode mode);

struct MaximizerBudget {
  std::size_t candidates = 1000;
  std::size_t refine_evaluations = 100;
  double initial_step = 0.05;  // pattern-search step in unit coordinates

  // 500*d random candidates and 50*d refinement evaluations.
  static MaximizerBudget for_dims(std::size_t dims);
};

struct AcquisitionConfig {
  AcquisitionKind kind = AcquisitionKind::EI;
  double alpha = 1.0;
  InfoGainMode ig_mode = InfoGainMode::Entropy;
  MaximizerBudget budget;

  void validate() const;
};

PredictionSet predict_set(const McmcEnsemble& ensemble, std::span<const double> x);

// Summed over members. A member with sigma2 == 0 contributes max(y_best - mu, 0).
double expected_improvement(const PredictionSet& ps, double y_best);

// Entropy mode requires every sigma2 > 0 (InvalidArgument otherwise).
double information_gain(const PredictionSet& ps, InfoGainMode mode);

// expected_improvement + alpha / n^2 * information_gain; n >= 1.
double eiig(const PredictionSet& ps, double y_best, double alpha, std::size_t n, InfoGainMode mode);

}  // namespace spartan
