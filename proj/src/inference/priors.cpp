#include "spartan/inference/priors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "spartan/error.hpp"

namespace spartan {

namespace {

double log_normal_in_log_space(double u, const LogNormalPrior& p) {
  const double z = (u - std::log(p.median)) / p.log_sd;
  return -0.5 * z * z - std::log(p.log_sd) - 0.5 * std::log(2.0 * std::numbers::pi);
}

double softplus(double v) { return v > 0.0 ? v + std::log1p(std::exp(-v)) : std::log1p(std::exp(v)); }

double sigmoid(double v) {
  if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
  const double e = std::exp(v);
  return e / (1.0 + e);
}

// log of the uniform(0,1) density pushed through logit: log s(v) + log(1 - s(v))
double log_logistic_density(double v) { return -softplus(-v) - softplus(v); }

double positive_log(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string("encode: non-positive ") + what);
  return std::log(v);
}

double logit(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("encode: pos outside (0,1)");
  return std::log(p) - std::log1p(-p);
}

double draw_log_normal_log(Rng& rng, const LogNormalPrior& p) {
  return std::log(p.median) + p.log_sd * standard_normal(rng);
}

}  // namespace

HyperparameterSpace::HyperparameterSpace(ModelSpec spec, PriorSpec priors)
    : spec_(std::move(spec)), priors_(priors) {
  if (spec_.dims == 0) throw InvalidArgument("ModelSpec: zero dimensions");
  const std::size_t d = spec_.dims;
  switch (spec_.kind) {
    case ModelKind::Stationary:
      size_ = d + 1;
      break;
    case ModelKind::Spartan:
      if (spec_.fixed_pos && spec_.fixed_pos->size() != d)
        throw InvalidArgument("ModelSpec: fixed_pos has wrong dimension");
      size_ = 2 * d + 2 + (spec_.fixed_pos ? 0 : d);
      spec_.weights.validate();
      break;
    case ModelKind::Hamming:
      size_ = 1;
      break;
  }
  if (spec_.learn_noise) ++size_;
}

Hyperparameters HyperparameterSpace::decode(std::span<const double> u) const {
  if (u.size() != size_) throw InvalidArgument("decode: wrong vector length");
  const std::size_t d = spec_.dims;
  std::size_t at = 0;
  auto take_exp = [&](std::size_t count) {
    std::vector<double> v(count);
    for (auto& t : v) t = std::exp(u[at++]);
    return v;
  };
  Hyperparameters h;
  switch (spec_.kind) {
    case ModelKind::Stationary: {
      StationaryCovariance c{spec_.base, {take_exp(d), 1.0}};
      c.params.signal_variance = std::exp(u[at++]);
      h.cov = std::move(c);
      break;
    }
    case ModelKind::Spartan: {
      SpartanCovariance c;
      c.base = spec_.base;
      c.weights = spec_.weights;
      c.params.local.lengthscales = take_exp(d);
      c.params.global_.lengthscales = take_exp(d);
      c.params.local.signal_variance = std::exp(u[at++]);
      c.params.global_.signal_variance = std::exp(u[at++]);
      if (spec_.fixed_pos) {
        c.params.pos = *spec_.fixed_pos;
      } else {
        c.params.pos.resize(d);
        for (auto& p : c.params.pos) p = sigmoid(u[at++]);
      }
      h.cov = std::move(c);
      break;
    }
    case ModelKind::Hamming:
      h.cov = HammingCovariance{std::exp(u[at++]), d};
      break;
  }
  h.noise_variance = spec_.learn_noise ? std::exp(u[at++]) : spec_.noise_variance;
  return h;
}

std::vector<double> HyperparameterSpace::encode(const Hyperparameters& h) const {
  std::vector<double> u;
  u.reserve(size_);
  switch (spec_.kind) {
    case ModelKind::Stationary: {
      const auto& c = std::get<StationaryCovariance>(h.cov);
      for (double l : c.params.lengthscales) u.push_back(positive_log(l, "lengthscale"));
      u.push_back(positive_log(c.params.signal_variance, "signal variance"));
      break;
    }
    case ModelKind::Spartan: {
      const auto& c = std::get<SpartanCovariance>(h.cov);
      for (double l : c.params.local.lengthscales) u.push_back(positive_log(l, "lengthscale"));
      for (double l : c.params.global_.lengthscales) u.push_back(positive_log(l, "lengthscale"));
      u.push_back(positive_log(c.params.local.signal_variance, "signal variance"));
      u.push_back(positive_log(c.params.global_.signal_variance, "signal variance"));
      if (!spec_.fixed_pos) {
        for (double p : c.params.pos) u.push_back(logit(p));
      }
      break;
    }
    case ModelKind::Hamming:
      u.push_back(positive_log(std::get<HammingCovariance>(h.cov).theta, "hamming theta"));
      break;
  }
  if (spec_.learn_noise) u.push_back(positive_log(h.noise_variance, "noise variance"));
  if (u.size() != size_) throw InvalidArgument("encode: parameters do not match the model layout");
  return u;
}

std::vector<double> HyperparameterSpace::initial() const {
  const std::size_t d = spec_.dims;
  std::vector<double> u;
  u.reserve(size_);
  switch (spec_.kind) {
    case ModelKind::Stationary:
      u.insert(u.end(), d, std::log(priors_.lengthscale.median));
      u.push_back(std::log(priors_.signal_variance.median));
      break;
    case ModelKind::Spartan:
      u.insert(u.end(), 2 * d, std::log(priors_.lengthscale.median));
      u.insert(u.end(), 2, std::log(priors_.signal_variance.median));
      if (!spec_.fixed_pos) u.insert(u.end(), d, 0.0);  // logit(0.5)
      break;
    case ModelKind::Hamming:
      u.push_back(std::log(priors_.hamming_theta.median));
      break;
  }
  if (spec_.learn_noise) u.push_back(std::log(spec_.noise_variance));
  return u;
}

std::vector<double> HyperparameterSpace::draw_prior(Rng& rng) const {
  const std::size_t d = spec_.dims;
  std::vector<double> u;
  u.reserve(size_);
  switch (spec_.kind) {
    case ModelKind::Stationary:
      for (std::size_t k = 0; k < d; ++k) u.push_back(draw_log_normal_log(rng, priors_.lengthscale));
      u.push_back(draw_log_normal_log(rng, priors_.signal_variance));
      break;
    case ModelKind::Spartan:
      for (std::size_t k = 0; k < 2 * d; ++k) u.push_back(draw_log_normal_log(rng, priors_.lengthscale));
      for (int k = 0; k < 2; ++k) u.push_back(draw_log_normal_log(rng, priors_.signal_variance));
      if (!spec_.fixed_pos) {
        for (std::size_t k = 0; k < d; ++k) u.push_back(logit(uniform_open01(rng)));
      }
      break;
    case ModelKind::Hamming:
      u.push_back(draw_log_normal_log(rng, priors_.hamming_theta));
      break;
  }
  if (spec_.learn_noise) u.push_back(draw_log_normal_log(rng, priors_.noise));
  return u;
}

double HyperparameterSpace::log_prior(std::span<const double> u) const {
  if (u.size() != size_) throw InvalidArgument("log_prior: wrong vector length");
  if (priors_.flat) return 0.0;
  const std::size_t d = spec_.dims;
  std::size_t at = 0;
  double lp = 0.0;
  auto add = [&](std::size_t count, const LogNormalPrior& p) {
    for (std::size_t k = 0; k < count; ++k) lp += log_normal_in_log_space(u[at++], p);
  };
  switch (spec_.kind) {
    case ModelKind::Stationary:
      add(d, priors_.lengthscale);
      add(1, priors_.signal_variance);
      break;
    case ModelKind::Spartan:
      add(2 * d, priors_.lengthscale);
      add(2, priors_.signal_variance);
      if (!spec_.fixed_pos) {
        for (std::size_t k = 0; k < d; ++k) lp += log_logistic_density(u[at++]);
      }
      break;
    case ModelKind::Hamming:
      add(1, priors_.hamming_theta);
      break;
  }
  if (spec_.learn_noise) add(1, priors_.noise);
  return lp;
}

double log_posterior_density(const Hyperparameters& h, const std::shared_ptr<const Dataset>& data,
                             const HyperparameterSpace& space) {
  constexpr double kRejected = -std::numeric_limits<double>::infinity();
  std::vector<double> u;
  try {
    u = space.encode(h);
  } catch (const InvalidArgument&) {
    return kRejected;
  }
  const double lp = space.log_prior(u);
  if (!std::isfinite(lp)) return kRejected;
  try {
    const double lml = log_marginal_likelihood(data, h);
    return std::isfinite(lml) ? lml + lp : kRejected;
  } catch (const NumericFailure&) {
    return kRejected;
  } catch (const InvalidArgument&) {
    return kRejected;
  }
}

}  // namespace spartan
