#include "spartan/surrogate/gp.hpp"

#include <atomic>
#include <cmath>
#include <numbers>

#include "spartan/error.hpp"

namespace spartan {

namespace {

constexpr int kJitterRetries = 3;
constexpr double kClampReportThreshold = 1e-6;

std::atomic<std::size_t> g_variance_clamps{0};

double clamp_variance(double v) {
  if (v < 0.0) {
    if (v < -kClampReportThreshold) g_variance_clamps.fetch_add(1, std::memory_order_relaxed);
    return 0.0;
  }
  return v;
}

std::vector<double> row_vector(const PointMatrix& m, Eigen::Index i) {
  std::vector<double> p(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index k = 0; k < m.cols(); ++k) p[static_cast<std::size_t>(k)] = m(i, k);
  return p;
}

}  // namespace

std::size_t variance_clamp_count() { return g_variance_clamps.load(std::memory_order_relaxed); }

PosteriorSample::PosteriorSample(std::shared_ptr<const Dataset> data, Hyperparameters hyper)
    : data_(std::move(data)), hyper_(std::move(hyper)), eval_(hyper_.cov, data_->X) {}

PosteriorSample PosteriorSample::fit(std::shared_ptr<const Dataset> data, Hyperparameters hyper) {
  if (!data) throw InvalidArgument("fit: null dataset");
  if (!(hyper.noise_variance >= 0.0)) throw InvalidArgument("fit: negative noise variance");
  if (!data->empty() && data->dims() != input_dims(hyper.cov))
    throw InvalidArgument("fit: dataset and covariance dimensions differ");
  PosteriorSample ps(std::move(data), std::move(hyper));
  const std::size_t n = ps.data_->size();
  if (n == 0) return ps;

  Eigen::MatrixXd g = ps.eval_.gram_without_jitter(ps.hyper_.noise_variance);
  double jitter = kGramJitter * g.diagonal().mean();
  for (int attempt = 0; attempt <= kJitterRetries; ++attempt) {
    Eigen::MatrixXd a = g;
    a.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() == Eigen::Success) {
      ps.chol_ = llt.matrixL();
      ps.jitter_ = jitter;
      ps.solve_alpha();
      return ps;
    }
    jitter *= 10.0;
  }
  throw NumericFailure("fit: Cholesky factorization failed after jitter escalation");
}

void PosteriorSample::solve_alpha() {
  const Eigen::VectorXd& y = data_->y;
  mean_ = y.size() > 0 ? y.mean() : 0.0;
  const Eigen::VectorXd centred = y.array() - mean_;
  alpha_ = chol_.triangularView<Eigen::Lower>().solve(centred);
  chol_.triangularView<Eigen::Lower>().transpose().solveInPlace(alpha_);
}

PosteriorSample PosteriorSample::condition_on(std::span<const double> x, double y) const {
  auto extended = std::make_shared<Dataset>(*data_);
  extended->append(x, y);
  if (data_->empty()) return fit(std::move(extended), hyper_);

  const auto n = static_cast<Eigen::Index>(data_->size());
  Eigen::VectorXd k(n);
  eval_.row(x, std::span<double>(k.data(), static_cast<std::size_t>(n)));
  const double kxx = eval_.self(x) + hyper_.noise_variance + jitter_;
  const Eigen::VectorXd l = chol_.triangularView<Eigen::Lower>().solve(k);
  const double d2 = kxx - l.squaredNorm();
  if (!(d2 > 0.0) || !std::isfinite(d2)) return fit(std::move(extended), hyper_);

  PosteriorSample ps(std::move(extended), hyper_);
  ps.chol_ = Eigen::MatrixXd::Zero(n + 1, n + 1);
  ps.chol_.topLeftCorner(n, n) = chol_;
  ps.chol_.block(n, 0, 1, n) = l.transpose();
  ps.chol_(n, n) = std::sqrt(d2);
  ps.jitter_ = jitter_;
  ps.solve_alpha();
  return ps;
}

Prediction PosteriorSample::predict(std::span<const double> x) const {
  const double kxx = eval_.self(x);
  const auto n = static_cast<Eigen::Index>(data_->size());
  if (n == 0) return {0.0, clamp_variance(kxx)};
  Eigen::VectorXd k(n);
  eval_.row(x, std::span<double>(k.data(), static_cast<std::size_t>(n)));
  const double mu = mean_ + k.dot(alpha_);
  chol_.triangularView<Eigen::Lower>().solveInPlace(k);
  return {mu, clamp_variance(kxx - k.squaredNorm())};
}

std::vector<Prediction> PosteriorSample::predict_batch(const PointMatrix& queries) const {
  std::vector<Prediction> out(static_cast<std::size_t>(queries.rows()));
  if (data_->empty()) {
    for (Eigen::Index b = 0; b < queries.rows(); ++b)
      out[static_cast<std::size_t>(b)] = {0.0, clamp_variance(eval_.self(row_vector(queries, b)))};
    return out;
  }
  Eigen::MatrixXd kstar = eval_.cross(queries);
  const Eigen::VectorXd mu = kstar.transpose() * alpha_;
  chol_.triangularView<Eigen::Lower>().solveInPlace(kstar);
  const Eigen::VectorXd explained = kstar.colwise().squaredNorm().transpose();
  for (Eigen::Index b = 0; b < queries.rows(); ++b) {
    const double kxx = eval_.self(row_vector(queries, b));
    out[static_cast<std::size_t>(b)] = {mean_ + mu(b), clamp_variance(kxx - explained(b))};
  }
  return out;
}

double PosteriorSample::log_marginal_likelihood() const {
  const auto n = static_cast<double>(data_->size());
  if (data_->empty()) return 0.0;
  const Eigen::VectorXd centred = data_->y.array() - mean_;
  const double quad = centred.dot(alpha_);
  const double log_det_half = chol_.diagonal().array().log().sum();
  return -0.5 * quad - log_det_half - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

double log_marginal_likelihood(const std::shared_ptr<const Dataset>& data, const Hyperparameters& hyper) {
  if (!data || data->empty()) throw InvalidArgument("log_marginal_likelihood: need at least one point");
  return PosteriorSample::fit(data, hyper).log_marginal_likelihood();
}

}  // namespace spartan
