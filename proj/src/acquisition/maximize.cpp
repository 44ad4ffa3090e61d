#include "spartan/acquisition/maximize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spartan/error.hpp"

namespace spartan {

namespace {

constexpr double kObservedVariance = 1e-14;
constexpr double kMinStep = 1e-7;

PointMatrix as_matrix(std::span<const double> x) {
  PointMatrix m(1, static_cast<Eigen::Index>(x.size()));
  for (std::size_t k = 0; k < x.size(); ++k) m(0, static_cast<Eigen::Index>(k)) = x[k];
  return m;
}

}  // namespace

EnsembleAcquisition::EnsembleAcquisition(const McmcEnsemble& ensemble, AcquisitionConfig config, double y_best,
                                         std::size_t iteration)
    : ensemble_(&ensemble), config_(config), y_best_(y_best), iteration_(std::max<std::size_t>(iteration, 1)) {
  config_.validate();
  if (ensemble.size() == 0) throw InvalidArgument("EnsembleAcquisition: empty ensemble");
}

std::vector<double> EnsembleAcquisition::operator()(const PointMatrix& queries) const {
  const auto nq = static_cast<std::size_t>(queries.rows());
  std::vector<std::vector<Prediction>> per_member;
  per_member.reserve(ensemble_->size());
  for (const auto& m : ensemble_->members) per_member.push_back(m.predict_batch(queries));

  std::vector<double> out(nq);
  PredictionSet ps;
  ps.members.resize(ensemble_->size());
  const bool with_ig = config_.kind == AcquisitionKind::EIIG && config_.alpha > 0.0;
  for (std::size_t b = 0; b < nq; ++b) {
    double min_var = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < per_member.size(); ++i) {
      ps.members[i] = per_member[i][b];
      min_var = std::min(min_var, ps.members[i].sigma2);
    }
    if (with_ig && min_var > kObservedVariance)
      out[b] = eiig(ps, y_best_, config_.alpha, iteration_, config_.ig_mode);
    else
      out[b] = expected_improvement(ps, y_best_);
  }
  return out;
}

double EnsembleAcquisition::operator()(std::span<const double> x) const { return (*this)(as_matrix(x))[0]; }

MaximizeResult maximize(const AcquisitionBatch& acq, std::size_t dims,
                        const std::vector<std::vector<double>>& seeds, Rng& rng, const MaximizerBudget& budget) {
  if (dims == 0) throw InvalidArgument("maximize: empty search space");
  if (budget.candidates < 1) throw InvalidArgument("maximize: need at least one candidate");
  const auto d = static_cast<Eigen::Index>(dims);

  std::size_t usable_seeds = 0;
  for (const auto& s : seeds) usable_seeds += (s.size() == dims) ? 1 : 0;
  PointMatrix cand(static_cast<Eigen::Index>(budget.candidates + usable_seeds), d);
  // Row-major fill so the draw order does not depend on the storage layout.
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(budget.candidates); ++i)
    for (Eigen::Index k = 0; k < d; ++k) cand(i, k) = uniform01(rng);
  Eigen::Index row = static_cast<Eigen::Index>(budget.candidates);
  for (const auto& s : seeds) {
    if (s.size() != dims) continue;
    for (Eigen::Index k = 0; k < d; ++k) cand(row, k) = std::clamp(s[static_cast<std::size_t>(k)], 0.0, 1.0);
    ++row;
  }

  const std::vector<double> scores = acq(cand);
  MaximizeResult best;
  best.value = -std::numeric_limits<double>::infinity();
  Eigen::Index best_row = -1;
  for (Eigen::Index i = 0; i < cand.rows(); ++i) {
    const double v = scores[static_cast<std::size_t>(i)];
    if (std::isfinite(v) && v > best.value) {
      best.value = v;
      best_row = i;
    }
  }
  if (best_row < 0) throw NumericFailure("maximize: acquisition not finite at any candidate");
  best.x.resize(dims);
  for (Eigen::Index k = 0; k < d; ++k) best.x[static_cast<std::size_t>(k)] = cand(best_row, k);
  best.evaluations = static_cast<std::size_t>(cand.rows());

  // Exploratory coordinate moves: per axis, score x +/- step and take the
  // better one if it improves; halve the step after a sweep with no move.
  auto refine = [&](std::vector<double> x, double value) {
    double step = budget.initial_step;
    std::size_t spent = 0;
    PointMatrix pair(2, d);
    while (spent + 2 <= budget.refine_evaluations && step >= kMinStep) {
      bool moved = false;
      for (Eigen::Index k = 0; k < d && spent + 2 <= budget.refine_evaluations; ++k) {
        for (Eigen::Index t = 0; t < d; ++t) pair(0, t) = pair(1, t) = x[static_cast<std::size_t>(t)];
        const double centre = x[static_cast<std::size_t>(k)];
        pair(0, k) = std::min(centre + step, 1.0);
        pair(1, k) = std::max(centre - step, 0.0);
        const std::vector<double> v = acq(pair);
        spent += 2;
        const int pick = (std::isfinite(v[1]) && !(v[0] >= v[1])) ? 1 : 0;
        if (std::isfinite(v[static_cast<std::size_t>(pick)]) && v[static_cast<std::size_t>(pick)] > value) {
          value = v[static_cast<std::size_t>(pick)];
          x[static_cast<std::size_t>(k)] = pair(pick, k);
          moved = true;
        }
      }
      if (!moved) step *= 0.5;
    }
    best.evaluations += spent;
    return std::pair{std::move(x), value};
  };

  auto [rx, rv] = refine(best.x, best.value);
  best.x = std::move(rx);
  best.value = rv;

  return best;
}

std::vector<std::vector<double>> maximizer_seeds(const McmcEnsemble& ensemble, const Dataset& data) {
  std::vector<std::vector<double>> seeds;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.y(static_cast<Eigen::Index>(i)) < best) {
      best = data.y(static_cast<Eigen::Index>(i));
      seeds.push_back(data.point(i));
    }
  }
  for (const auto& m : ensemble.members) {
    if (const auto* c = std::get_if<SpartanCovariance>(&m.hyper().cov)) seeds.push_back(c->params.pos);
  }
  return seeds;
}

std::size_t maximize_discrete(const AcquisitionBatch& acq, const PointMatrix& candidates) {
  if (candidates.rows() < 1) throw InvalidArgument("maximize_discrete: no candidates");
  const std::vector<double> scores = acq(candidates);
  std::size_t best = candidates.rows();
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (std::isfinite(scores[i]) && scores[i] > best_value) {
      best_value = scores[i];
      best = i;
    }
  }
  if (best == static_cast<std::size_t>(candidates.rows()))
    throw NumericFailure("maximize_discrete: acquisition not finite at any candidate");
  return best;
}

}  // namespace spartan
