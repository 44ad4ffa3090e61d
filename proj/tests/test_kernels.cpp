#include <doctest.h>

#include <cmath>
#include <vector>

#include "spartan/error.hpp"
#include "spartan/kernels/ard.hpp"
#include "spartan/kernels/covariance.hpp"
#include "spartan/kernels/hamming.hpp"
#include "spartan/kernels/spartan.hpp"
#include "spartan/random.hpp"
#include "support/oracle.hpp"

using namespace spartan;
using Vec = std::vector<double>;

namespace {

Vec random_point(Rng& rng, std::size_t d) {
  Vec x(d);
  for (auto& v : x) v = uniform01(rng);
  return x;
}

ArdParams random_ard(Rng& rng, std::size_t d) {
  ArdParams p;
  for (std::size_t k = 0; k < d; ++k) p.lengthscales.push_back(0.05 + uniform01(rng));
  p.signal_variance = 0.2 + 2 * uniform01(rng);
  return p;
}

SpartanParams random_spartan(Rng& rng, std::size_t d) {
  SpartanParams sp;
  sp.local = random_ard(rng, d);
  sp.global_ = random_ard(rng, d);
  sp.pos = random_point(rng, d);
  return sp;
}

}  // namespace

TEST_CASE("se_ard closed-form values") {
  CHECK(se_ard(Vec{0.3, 0.7}, Vec{0.3, 0.7}, {{0.2, 0.4}, 1.0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(se_ard(Vec{0}, Vec{1}, {{1.0}, 1.0}) == doctest::Approx(0.606531).epsilon(1e-6));
  const double expect = oracle::se({0, 0}, {1, 1}, {1, 2}, 2);
  CHECK(se_ard(Vec{0, 0}, Vec{1, 1}, {{1, 2}, 2}) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(expect == doctest::Approx(1.070522).epsilon(1e-6));
}

TEST_CASE("matern52_ard closed-form values") {
  const ArdParams p{{1.0}, 1.0};
  CHECK(matern52_ard(Vec{0.4}, Vec{0.4}, {{0.3}, 2.5}) == 2.5);
  CHECK(matern52_ard(Vec{0}, Vec{1}, p) == doctest::Approx(0.523994).epsilon(1e-6));
  CHECK(matern52_ard(Vec{0}, Vec{2}, p) < matern52_ard(Vec{0}, Vec{1}, p));
}

TEST_CASE("ard kernels match the oracle, are symmetric and translation invariant") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 1 + t % 5;
    const ArdParams p = random_ard(rng, d);
    const Vec a = random_point(rng, d), b = random_point(rng, d);
    CHECK(se_ard(a, b, p) == doctest::Approx(oracle::se(a, b, p.lengthscales, p.signal_variance)).epsilon(1e-13));
    CHECK(matern52_ard(a, b, p) ==
          doctest::Approx(oracle::matern52(a, b, p.lengthscales, p.signal_variance)).epsilon(1e-13));
    CHECK(std::abs(se_ard(a, b, p) - se_ard(b, a, p)) < 1e-12);
    CHECK(std::abs(matern52_ard(a, b, p) - matern52_ard(b, a, p)) < 1e-12);
    CHECK(matern52_ard(a, a, p) >= std::abs(matern52_ard(a, b, p)));
    Vec a2 = a, b2 = b;
    for (std::size_t k = 0; k < d; ++k) {
      a2[k] += 0.37;
      b2[k] += 0.37;
    }
    CHECK(se_ard(a2, b2, p) == doctest::Approx(se_ard(a, b, p)).epsilon(1e-12));
    CHECK(matern52_ard(a2, b2, p) == doctest::Approx(matern52_ard(a, b, p)).epsilon(1e-12));
  }
}

TEST_CASE("ard kernels reject bad input") {
  CHECK_THROWS_AS(se_ard(Vec{0, 0}, Vec{1}, {{1, 1}, 1}), InvalidArgument);
  CHECK_THROWS_AS(matern52_ard(Vec{0}, Vec{1}, {{1, 1}, 1}), InvalidArgument);
  CHECK_THROWS_AS((ArdParams{{0.0}, 1.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((ArdParams{{1.0}, -1.0}.validate()), InvalidArgument);
}

TEST_CASE("hamming kernel") {
  CHECK(hamming_kernel(Vec{1, 2, 0}, Vec{1, 2, 0}, 3.0) == 1.0);
  CHECK(hamming_kernel(Vec{0, 0, 0}, Vec{1, 1, 2}, 1.0) == doctest::Approx(0.367879).epsilon(1e-6));
  CHECK(hamming_kernel(Vec{0, 1, 2, 3}, Vec{0, 1, 0, 0}, 2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(hamming_kernel(Vec{0, 1}, Vec{0}, 1.0), InvalidArgument);
}

TEST_CASE("weights: normal-pdf oracle and symmetric case") {
  const WeightConfig def;
  const KernelWeights w = weights(Vec{0.5}, Vec{0.5}, def);
  CHECK(oracle::gaussian_pdf(0.5, 0.5, 0.05) == doctest::Approx(1.784124).epsilon(1e-6));
  CHECK(oracle::gaussian_pdf(0.5, 0.5, 10) == doctest::Approx(0.126157).epsilon(1e-6));
  CHECK(w.local == doctest::Approx(oracle::lambda_local({0.5}, {0.5}, 0.5, 10, 0.05)).epsilon(1e-14));
  CHECK(w.local == doctest::Approx(0.966417).epsilon(1e-5));

  const WeightConfig sym{0.5, 0.3, 0.3};
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const KernelWeights s = weights(random_point(rng, 3), Vec{0.5, 0.5, 0.5}, sym);
    CHECK(s.local == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(s.global == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
  }
}

TEST_CASE("weights: oracle agreement and normalization") {
  Rng rng(5);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t d = 1 + t % 4;
    const Vec x = random_point(rng, d), pos = random_point(rng, d);
    const WeightConfig w{uniform01(rng), 0.5 + 10 * uniform01(rng), 0.01 + 0.2 * uniform01(rng)};
    const KernelWeights k = weights(x, pos, w);
    CHECK(std::abs(k.local * k.local + k.global * k.global - 1.0) < 1e-12);
    CHECK(k.local == doctest::Approx(oracle::lambda_local(x, pos, w.global_mean, w.global_variance,
                                                          w.local_variance)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(weights(Vec{1.5}, Vec{0.5}, {}), InvalidArgument);
  CHECK_THROWS_AS(weights(Vec{0.5}, Vec{-0.1}, {}), InvalidArgument);
  CHECK_THROWS_AS((WeightConfig{0.5, 0.0, 0.05}.validate()), InvalidArgument);
}

TEST_CASE("weights stay finite far from the local centre") {
  const WeightConfig narrow{0.5, 10, 1e-4};
  const KernelWeights w = weights(Vec{1, 1, 1, 1, 1, 1}, Vec{0, 0, 0, 0, 0, 0}, narrow);
  CHECK(std::isfinite(w.local));
  CHECK(w.global == doctest::Approx(1.0));
}

TEST_CASE("spartan kernel: formula oracle and degenerate cases") {
  SpartanParams sp;
  sp.local = {{0.05}, 1.0};
  sp.global_ = {{0.5}, 1.0};
  sp.pos = {0.5};
  const WeightConfig w;
  const double expect = [&] {
    const double l1 = oracle::lambda_local({0.5}, {0.5}, 0.5, 10, 0.05);
    const double l2 = oracle::lambda_local({0.6}, {0.5}, 0.5, 10, 0.05);
    const double g1 = std::sqrt(1 - l1 * l1), g2 = std::sqrt(1 - l2 * l2);
    return l1 * l2 * oracle::matern52({0.5}, {0.6}, {0.05}, 1) + g1 * g2 * oracle::matern52({0.5}, {0.6}, {0.5}, 1);
  }();
  CHECK(spartan_kernel(Vec{0.5}, Vec{0.6}, sp, w, BaseKernel::Matern52) == doctest::Approx(expect).epsilon(1e-13));
  CHECK(expect == doctest::Approx(0.19601444864866).epsilon(1e-12));

  CHECK(spartan_kernel(Vec{0.2}, Vec{0.2}, sp, w, BaseKernel::Matern52) == doctest::Approx(1.0).epsilon(1e-14));

  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    SpartanParams eq = random_spartan(rng, 2);
    eq.global_ = eq.local;
    const Vec a = random_point(rng, 2), b = random_point(rng, 2);
    const double base = matern52_ard(a, b, eq.local);
    const KernelWeights wa = weights(a, eq.pos, w), wb = weights(b, eq.pos, w);
    const double k = spartan_kernel(a, b, eq, w, BaseKernel::Matern52);
    CHECK(k == doctest::Approx(base * (wa.local * wb.local + wa.global * wb.global)).epsilon(1e-12));
    CHECK(k <= base + 1e-15);
    const SpartanParams r = random_spartan(rng, 2);
    CHECK(std::abs(spartan_kernel(a, b, r, w, BaseKernel::SquaredExponential) -
                   spartan_kernel(b, a, r, w, BaseKernel::SquaredExponential)) < 1e-12);
  }
}

TEST_CASE("gram: n = 1, symmetry under permutation, positive definite") {
  PointMatrix one(1, 2);
  one << 0.2, 0.4;
  const Covariance st = StationaryCovariance{BaseKernel::Matern52, {{0.3, 0.3}, 1.5}};
  const Eigen::MatrixXd g1 = gram(one, st, 0.01);
  CHECK(g1.rows() == 1);
  CHECK(g1(0, 0) == doctest::Approx(1.5 + 0.01 + kGramJitter * 1.51).epsilon(1e-15));

  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + t % 9;
    PointMatrix X(n, 3);
    for (std::size_t i = 0; i < n; ++i)
      for (int k = 0; k < 3; ++k) X(i, k) = uniform01(rng);
    const Covariance cov = StationaryCovariance{BaseKernel::Matern52, random_ard(rng, 3)};
    const Eigen::MatrixXd g = gram(X, cov, 0.0);
    oracle::Matrix m(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] = g(i, j);
        CHECK(g(i, j) == g(j, i));
      }
    CHECK(oracle::min_eigenvalue(m) > 0.0);

    // Reversing the points reverses rows and columns.
    const PointMatrix R = X.colwise().reverse();
    const Eigen::MatrixXd gr = gram(R, cov, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(gr(i, j) == doctest::Approx(g(n - 1 - i, n - 1 - j)).epsilon(1e-14));
  }
}

TEST_CASE("spartan gram is PSD before jitter") {
  Rng rng(77);
  for (int t = 0; t < 30; ++t) {
    PointMatrix X(20, 2);
    for (int i = 0; i < 20; ++i)
      for (int k = 0; k < 2; ++k) X(i, k) = uniform01(rng);
    const Covariance cov = SpartanCovariance{BaseKernel::Matern52, random_spartan(rng, 2), {}};
    const CovarianceEvaluator ev(cov, X);
    const Eigen::MatrixXd g = ev.gram_without_jitter(0.0);
    oracle::Matrix m(20, std::vector<double>(20));
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) m[i][j] = g(i, j);
    CHECK(oracle::min_eigenvalue(m) >= -1e-8);
  }
}

TEST_CASE("covariance evaluator agrees with pairwise evaluation") {
  Rng rng(31);
  for (int t = 0; t < 30; ++t) {
    const std::size_t d = 1 + t % 4, n = 1 + t % 13;
    PointMatrix X(n, d);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < d; ++k) X(i, k) = uniform01(rng);
    std::vector<Covariance> covs = {
        StationaryCovariance{BaseKernel::Matern52, random_ard(rng, d)},
        StationaryCovariance{BaseKernel::SquaredExponential, random_ard(rng, d)},
        SpartanCovariance{BaseKernel::Matern52, random_spartan(rng, d), {}},
        SpartanCovariance{BaseKernel::SquaredExponential, random_spartan(rng, d), {0.4, 5.0, 0.1}},
    };
    for (const auto& cov : covs) {
      const CovarianceEvaluator ev(cov, X);
      const Vec q = random_point(rng, d);
      std::vector<double> row(n);
      ev.row(q, row);
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> xj(d);
        for (std::size_t k = 0; k < d; ++k) xj[k] = X(j, k);
        CHECK(row[j] == doctest::Approx(covariance(cov, q, xj)).epsilon(1e-12));
      }
      CHECK(ev.self(q) == doctest::Approx(covariance(cov, q, q)).epsilon(1e-12));
      const Eigen::MatrixXd c = ev.cross(X);
      const Eigen::MatrixXd g = ev.gram_without_jitter(0.0);
      CHECK((c - g).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("hamming covariance through the evaluator") {
  PointMatrix X(3, 2);
  X << 0, 1, 1, 1, 2, 0;
  const Covariance cov = HammingCovariance{2.0, 2};
  const CovarianceEvaluator ev(cov, X);
  const Eigen::MatrixXd g = ev.gram_without_jitter(0.0);
  CHECK(g(0, 1) == doctest::Approx(std::exp(-1.0)));
  CHECK(g(0, 2) == doctest::Approx(std::exp(-2.0)));
  CHECK(g(1, 1) == 1.0);
}
