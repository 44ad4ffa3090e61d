#include "spartan/acquisition/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spartan/error.hpp"

namespace spartan {

namespace {

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }
double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

}  // namespace

double PredictionSet::mean_mu() const {
  if (members.empty()) throw InvalidArgument("PredictionSet: empty");
  double s = 0.0;
  for (const auto& p : members) s += p.mu;
  return s / static_cast<double>(members.size());
}

std::string_view to_string(AcquisitionKind kind) { return kind == AcquisitionKind::EI ? "ei" : "eiig"; }

std::string_view to_string(InfoGainMode mode) { return mode == InfoGainMode::Entropy ? "entropy" : "verbatim"; }

MaximizerBudget MaximizerBudget::for_dims(std::size_t dims) {
  MaximizerBudget b;
  b.candidates = 500 * dims;
  b.refine_evaluations = 50 * dims;
  return b;
}

void AcquisitionConfig::validate() const {
  if (!(alpha >= 0.0)) throw InvalidArgument("AcquisitionConfig: alpha must be nonnegative");
  if (budget.candidates < 1) throw InvalidArgument("AcquisitionConfig: need at least one candidate");
  if (!(budget.initial_step > 0.0)) throw InvalidArgument("AcquisitionConfig: step must be positive");
}

PredictionSet predict_set(const McmcEnsemble& ensemble, std::span<const double> x) {
  PredictionSet ps;
  ps.members.reserve(ensemble.size());
  for (const auto& m : ensemble.members) ps.members.push_back(m.predict(x));
  return ps;
}

double expected_improvement(const PredictionSet& ps, double y_best) {
  if (!std::isfinite(y_best)) throw InvalidArgument("expected_improvement: y_best not finite");
  double total = 0.0;
  for (const auto& p : ps.members) {
    const double gain = y_best - p.mu;
    if (p.sigma2 <= 0.0) {
      total += std::max(gain, 0.0);
      continue;
    }
    const double sigma = std::sqrt(p.sigma2);
    const double z = gain / sigma;
    total += gain * normal_cdf(z) + sigma * normal_pdf(z);
  }
  return std::max(total, 0.0);
}

double information_gain(const PredictionSet& ps, InfoGainMode mode) {
  const std::size_t m = ps.size();
  if (m == 0) throw InvalidArgument("information_gain: empty prediction set");
  const double mu_hat = ps.mean_mu();
  double spread = 0.0;
  double log_var_sum = 0.0;
  for (const auto& p : ps.members) {
    if (!(p.sigma2 > 0.0)) {
      if (mode == InfoGainMode::Entropy) throw InvalidArgument("information_gain: zero predictive variance");
    }
    const double dev = p.mu - mu_hat;
    spread += dev * dev + p.sigma2;
    log_var_sum += std::log(p.sigma2);
  }
  if (mode == InfoGainMode::Verbatim) return -std::log(spread) + log_var_sum;
  const double md = static_cast<double>(m);
  return 0.5 * std::log(spread / md) - 0.5 * log_var_sum / md;
}

double eiig(const PredictionSet& ps, double y_best, double alpha, std::size_t n, InfoGainMode mode) {
  if (n < 1) throw InvalidArgument("eiig: iteration count must be >= 1");
  if (!(alpha >= 0.0)) throw InvalidArgument("eiig: alpha must be nonnegative");
  const double ei = expected_improvement(ps, y_best);
  if (alpha == 0.0) return ei;
  const double nn = static_cast<double>(n);
  return ei + alpha / (nn * nn) * information_gain(ps, mode);
}

}  // namespace spartan
