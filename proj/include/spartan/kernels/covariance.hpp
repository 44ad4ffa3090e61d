#pragma once

#include <Eigen/Dense>
#include <span>
#include <variant>
#include <vector>

#include "spartan/kernels/ard.hpp"
#include "spartan/kernels/spartan.hpp"

namespace spartan {

struct StationaryCovariance {
  BaseKernel base = BaseKernel::Matern52;
  ArdParams params;
};

struct SpartanCovariance {
  BaseKernel base = BaseKernel::Matern52;
  SpartanParams params;
  WeightConfig weights;
};

// Categorical inputs; coordinates hold integer levels.
struct HammingCovariance {
  double theta = 1.0;
  std::size_t dims = 1;
};

using Covariance = std::variant<StationaryCovariance, SpartanCovariance, HammingCovariance>;

std::size_t input_dims(const Covariance& cov);
void validate(const Covariance& cov);

// Pairwise evaluation; the reference path the batched evaluator is checked
// against.
double covariance(const Covariance& cov, std::span<const double> x, std::span<const double> x2);

// Points are stored one per row of a column-major n x d matrix, so each
// coordinate is contiguous across points.
using PointMatrix = Eigen::MatrixXd;

// Relative diagonal jitter added by gram().
inline constexpr double kGramJitter = 1e-10;

// A covariance bound to a point set with per-point features (inverse
// lengthscales, Spartan weights) computed once. Keeps a pointer to `points`;
// the matrix must outlive the evaluator.
class CovarianceEvaluator {
 public:
  CovarianceEvaluator(Covariance cov, const PointMatrix& points);

  const Covariance& covariance() const { return cov_; }
  std::size_t size() const { return static_cast<std::size_t>(points_->rows()); }
  std::size_t dims() const { return dims_; }

  // k(x, x)
  double self(std::span<const double> x) const;

  // out[j] = k(x, X_j) for every stored point.
  void row(std::span<const double> x, std::span<double> out) const;

  // Column b of the result is row(queries.row(b)); result is n x B.
  Eigen::MatrixXd cross(const PointMatrix& queries) const;

  // K(X, X) + noise_variance * I, no jitter. Throws NumericFailure on a
  // non-finite entry.
  Eigen::MatrixXd gram_without_jitter(double noise_variance) const;

 private:
  // k(X_i, X_j) for j <= i.
  void lower_row(std::size_t i, std::span<double> out, std::span<double> scratch) const;
  void row_impl(std::span<const double> x, std::size_t n, std::span<double> out,
                std::span<double> scratch) const;

  Covariance cov_;
  const PointMatrix* points_;
  std::size_t dims_ = 0;
  std::vector<double> inv_ls_local_;
  std::vector<double> inv_ls_global_;
  std::vector<double> lam_local_;
  std::vector<double> lam_global_;
};

// K(X, X) + (noise_variance + jitter) * I with jitter = kGramJitter * mean
// diagonal of K + noise.
Eigen::MatrixXd gram(const PointMatrix& points, const Covariance& cov, double noise_variance);

}  // namespace spartan
