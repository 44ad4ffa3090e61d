#pragma once

#include <Eigen/Dense>
#include <memory>
#include <span>
#include <vector>

#include "spartan/kernels/covariance.hpp"
#include "spartan/surrogate/dataset.hpp"

namespace spartan {

inline constexpr double kDefaultNoiseVariance = 1e-6;

// One hyperparameter sample: covariance with its parameters plus the
// observation noise variance.
struct Hyperparameters {
  Covariance cov;
  double noise_variance = kDefaultNoiseVariance;
};

struct Prediction {
  double mu = 0.0;
  double sigma2 = 0.0;
};

// Zero-mean GP conditioned on a dataset under one hyperparameter sample.
// Targets are centred by their sample mean before conditioning and the mean is
// added back to predictions. Immutable after construction.
class PosteriorSample {
 public:
  // Factorizes K + noise*I + jitter*I. On failure the jitter is multiplied by
  // 10 up to three times before NumericFailure is thrown. An empty dataset
  // yields the prior.
  static PosteriorSample fit(std::shared_ptr<const Dataset> data, Hyperparameters hyper);

  // Conditions on one more observation by extending the Cholesky factor.
  // Matches fit() on the extended dataset up to jitter differences.
  PosteriorSample condition_on(std::span<const double> x, double y) const;

  Prediction predict(std::span<const double> x) const;
  std::vector<Prediction> predict_batch(const PointMatrix& queries) const;

  // -1/2 y'alpha - sum log diag(L) - n/2 log(2 pi), on centred targets.
  double log_marginal_likelihood() const;

  const Hyperparameters& hyper() const { return hyper_; }
  const Dataset& data() const { return *data_; }
  std::shared_ptr<const Dataset> data_ptr() const { return data_; }
  const Eigen::MatrixXd& chol() const { return chol_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }
  double target_mean() const { return mean_; }
  double jitter() const { return jitter_; }

 private:
  PosteriorSample(std::shared_ptr<const Dataset> data, Hyperparameters hyper);
  void solve_alpha();

  std::shared_ptr<const Dataset> data_;
  Hyperparameters hyper_;
  CovarianceEvaluator eval_;
  Eigen::MatrixXd chol_;
  Eigen::VectorXd alpha_;
  double mean_ = 0.0;
  double jitter_ = 0.0;
};

double log_marginal_likelihood(const std::shared_ptr<const Dataset>& data, const Hyperparameters& hyper);

// Number of predictions whose variance was clamped from below zero by more
// than 1e-6 since process start.
std::size_t variance_clamp_count();

}  // namespace spartan
