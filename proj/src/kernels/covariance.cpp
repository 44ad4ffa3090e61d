#include "spartan/kernels/covariance.hpp"

#include <cmath>
#include <string>

#include "spartan/error.hpp"
#include "spartan/kernels/hamming.hpp"
#include "spartan/simd/row_kernels.hpp"

namespace spartan {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<double> inverted(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = 1.0 / v[k];
  return out;
}

std::span<const double> row_of(const PointMatrix& m, Eigen::Index i, std::vector<double>& buf) {
  buf.resize(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index k = 0; k < m.cols(); ++k) buf[static_cast<std::size_t>(k)] = m(i, k);
  return buf;
}

}  // namespace

std::size_t input_dims(const Covariance& cov) {
  return std::visit(Overloaded{
                        [](const StationaryCovariance& c) { return c.params.dims(); },
                        [](const SpartanCovariance& c) { return c.params.dims(); },
                        [](const HammingCovariance& c) { return c.dims; },
                    },
                    cov);
}

void validate(const Covariance& cov) {
  std::visit(Overloaded{
                 [](const StationaryCovariance& c) { c.params.validate(); },
                 [](const SpartanCovariance& c) {
                   c.params.validate();
                   c.weights.validate();
                 },
                 [](const HammingCovariance& c) {
                   if (!(c.theta > 0.0) || !std::isfinite(c.theta))
                     throw InvalidArgument("HammingCovariance: theta must be positive");
                   if (c.dims == 0) throw InvalidArgument("HammingCovariance: zero arity");
                 },
             },
             cov);
}

double covariance(const Covariance& cov, std::span<const double> x, std::span<const double> x2) {
  return std::visit(Overloaded{
                        [&](const StationaryCovariance& c) { return ard_kernel(c.base, x, x2, c.params); },
                        [&](const SpartanCovariance& c) {
                          return spartan_kernel(x, x2, c.params, c.weights, c.base);
                        },
                        [&](const HammingCovariance& c) { return hamming_kernel(x, x2, c.theta); },
                    },
                    cov);
}

CovarianceEvaluator::CovarianceEvaluator(Covariance cov, const PointMatrix& points)
    : cov_(std::move(cov)), points_(&points), dims_(input_dims(cov_)) {
  validate(cov_);
  if (points.rows() > 0 && static_cast<std::size_t>(points.cols()) != dims_)
    throw InvalidArgument("CovarianceEvaluator: points have " + std::to_string(points.cols()) +
                          " columns, covariance expects " + std::to_string(dims_));
  if (const auto* c = std::get_if<StationaryCovariance>(&cov_)) {
    inv_ls_local_ = inverted(c->params.lengthscales);
  } else if (const auto* c = std::get_if<SpartanCovariance>(&cov_)) {
    inv_ls_local_ = inverted(c->params.local.lengthscales);
    inv_ls_global_ = inverted(c->params.global_.lengthscales);
    const auto n = static_cast<std::size_t>(points.rows());
    lam_local_.resize(n);
    lam_global_.resize(n);
    std::vector<double> buf;
    for (std::size_t i = 0; i < n; ++i) {
      const KernelWeights w =
          weights_unchecked(row_of(points, static_cast<Eigen::Index>(i), buf), c->params.pos, c->weights);
      lam_local_[i] = w.local;
      lam_global_[i] = w.global;
    }
  }
}

double CovarianceEvaluator::self(std::span<const double> x) const { return spartan::covariance(cov_, x, x); }

void CovarianceEvaluator::row_impl(std::span<const double> x, std::size_t n, std::span<double> out,
                                   std::span<double> scratch) const {
  if (x.size() != dims_) throw InvalidArgument("covariance row: dimension mismatch");
  const PointMatrix& pts = *points_;
  const auto ld = static_cast<std::size_t>(pts.rows());
  if (const auto* c = std::get_if<StationaryCovariance>(&cov_)) {
    simd::ard_row(c->base, {x.data(), pts.data(), n, ld, dims_, inv_ls_local_.data(),
                            c->params.signal_variance, out.data()});
  } else if (const auto* c = std::get_if<SpartanCovariance>(&cov_)) {
    double* k_local = scratch.data();
    double* k_global = scratch.data() + n;
    simd::ard_row(c->base, {x.data(), pts.data(), n, ld, dims_, inv_ls_local_.data(),
                            c->params.local.signal_variance, k_local});
    simd::ard_row(c->base, {x.data(), pts.data(), n, ld, dims_, inv_ls_global_.data(),
                            c->params.global_.signal_variance, k_global});
    const KernelWeights wx = weights_unchecked(x, c->params.pos, c->weights);
    simd::weighted_sum({k_local, k_global, lam_local_.data(), lam_global_.data(), wx.local, wx.global, n,
                        out.data()});
  } else {
    const auto& h = std::get<HammingCovariance>(cov_);
    const double scale = h.theta / static_cast<double>(dims_);
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t differing = 0;
      for (std::size_t k = 0; k < dims_; ++k) differing += (x[k] != pts.data()[k * ld + j]) ? 1 : 0;
      out[j] = std::exp(-scale * static_cast<double>(differing));
    }
  }
}

void CovarianceEvaluator::row(std::span<const double> x, std::span<double> out) const {
  const std::size_t n = size();
  if (out.size() < n) throw InvalidArgument("covariance row: output too short");
  std::vector<double> scratch(std::holds_alternative<SpartanCovariance>(cov_) ? 2 * n : 0);
  row_impl(x, n, out, scratch);
}

void CovarianceEvaluator::lower_row(std::size_t i, std::span<double> out, std::span<double> scratch) const {
  std::vector<double> xi;
  row_impl(row_of(*points_, static_cast<Eigen::Index>(i), xi), i + 1, out, scratch);
}

Eigen::MatrixXd CovarianceEvaluator::cross(const PointMatrix& queries) const {
  const std::size_t n = size();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n), queries.rows());
  std::vector<double> scratch(std::holds_alternative<SpartanCovariance>(cov_) ? 2 * n : 0);
  std::vector<double> q;
  for (Eigen::Index b = 0; b < queries.rows(); ++b) {
    row_impl(row_of(queries, b, q), n, std::span<double>(out.col(b).data(), n), scratch);
  }
  return out;
}

Eigen::MatrixXd CovarianceEvaluator::gram_without_jitter(double noise_variance) const {
  const std::size_t n = size();
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd g(nn, nn);
  std::vector<double> buf(n);
  std::vector<double> scratch(std::holds_alternative<SpartanCovariance>(cov_) ? 2 * n : 0);
  for (std::size_t i = 0; i < n; ++i) {
    lower_row(i, buf, scratch);
    const auto ii = static_cast<Eigen::Index>(i);
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = buf[j];
      if (!std::isfinite(v)) throw NumericFailure("gram: non-finite covariance entry");
      g(ii, static_cast<Eigen::Index>(j)) = v;
      g(static_cast<Eigen::Index>(j), ii) = v;
    }
    g(ii, ii) += noise_variance;
  }
  return g;
}

Eigen::MatrixXd gram(const PointMatrix& points, const Covariance& cov, double noise_variance) {
  if (points.rows() < 1) throw InvalidArgument("gram: empty point set");
  if (!(noise_variance >= 0.0)) throw InvalidArgument("gram: negative noise variance");
  CovarianceEvaluator ev(cov, points);
  Eigen::MatrixXd g = ev.gram_without_jitter(noise_variance);
  const double jitter = kGramJitter * g.diagonal().mean();
  g.diagonal().array() += jitter;
  return g;
}

}  // namespace spartan
