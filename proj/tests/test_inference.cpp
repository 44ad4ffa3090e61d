#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "spartan/error.hpp"
#include "spartan/inference/ensemble.hpp"
#include "spartan/inference/priors.hpp"
#include "spartan/inference/slice.hpp"
#include "support/oracle.hpp"

using namespace spartan;
using Vec = std::vector<double>;

namespace {

std::vector<double> run_chain(const LogDensity& f, double start, std::size_t burn, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  SliceChain chain({start}, f);
  for (std::size_t i = 0; i < burn; ++i) chain.step(rng);
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) {
    chain.step(rng);
    out.push_back(chain.state()[0]);
  }
  return out;
}

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

// Regularized lower incomplete gamma P(k, x), series expansion.
double gamma_cdf(double k, double x) {
  if (x <= 0) return 0;
  double sum = 1.0 / k, term = sum;
  for (int n = 1; n < 500; ++n) {
    term *= x / (k + n);
    sum += term;
    if (term < sum * 1e-16) break;
  }
  return std::exp(k * std::log(x) - x - std::lgamma(k)) * sum;
}

std::shared_ptr<Dataset> sampled_function(double lengthscale, std::size_t n, std::uint64_t seed) {
  // Draw y ~ GP(0, SE(l)) on an even grid through a dense Cholesky.
  Rng rng(seed);
  auto ds = std::make_shared<Dataset>(1);
  oracle::Matrix K(n, std::vector<double>(n));
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      K[i][j] = oracle::se({xs[i]}, {xs[j]}, {lengthscale}, 1.0) + (i == j ? 1e-8 : 0.0);
  oracle::Matrix L(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double s = K[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
      L[i][j] = i == j ? std::sqrt(std::max(s, 1e-300)) : s / L[j][j];
    }
  std::vector<double> z(n);
  for (auto& v : z) v = standard_normal(rng);
  for (std::size_t i = 0; i < n; ++i) {
    double y = 0;
    for (std::size_t k = 0; k <= i; ++k) y += L[i][k] * z[k];
    ds->append(Vec{xs[i]}, y);
  }
  return ds;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v.size() % 2 ? v[v.size() / 2] : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
}

}  // namespace

TEST_CASE("slice sampler: standard normal moments and KS") {
  const LogDensity f = [](std::span<const double> u) { return -0.5 * u[0] * u[0]; };
  const auto s = run_chain(f, 0.0, 200, 5000, 42);
  CHECK(std::abs(mean(s)) < 3.0 / std::sqrt(5000.0));
  CHECK(variance(s) >= 0.9);
  CHECK(variance(s) <= 1.1);
  CHECK(oracle::ks_distance(s, oracle::normal_cdf) < 0.05);
}

TEST_CASE("slice sampler: gamma target KS") {
  const double k = 3.0;
  const LogDensity f = [k](std::span<const double> u) {
    return u[0] > 0 ? (k - 1) * std::log(u[0]) - u[0] : -std::numeric_limits<double>::infinity();
  };
  const auto s = run_chain(f, 2.0, 200, 5000, 7);
  CHECK(oracle::ks_distance(s, [k](double x) { return gamma_cdf(k, x); }) < 0.05);
  CHECK(std::abs(mean(s) - k) < 0.15);
}

TEST_CASE("slice sampler: flat density moves and is reproducible") {
  const LogDensity flat = [](std::span<const double>) { return 0.0; };
  Rng rng(1);
  const Vec start{0.3, -0.2};
  const Vec next = slice_step(start, flat, rng);
  CHECK(next[0] != start[0]);
  CHECK(next[1] != start[1]);

  const LogDensity f = [](std::span<const double> u) { return -0.5 * (u[0] * u[0] + 4 * u[1] * u[1]); };
  Rng a(99), b(99);
  SliceChain ca({0.0, 0.0}, f), cb({0.0, 0.0}, f);
  for (int i = 0; i < 50; ++i) {
    ca.step(a);
    cb.step(b);
  }
  CHECK(ca.state() == cb.state());
}

TEST_CASE("slice sampler errors") {
  const LogDensity bad = [](std::span<const double>) { return -std::numeric_limits<double>::infinity(); };
  CHECK_THROWS_AS(SliceChain({0.0}, bad), InvalidArgument);

  // A density that is finite only at the current point: every proposal is
  // rejected until the shrink limit trips.
  const LogDensity spike = [](std::span<const double> u) {
    return u[0] == 0.25 ? 0.0 : -std::numeric_limits<double>::infinity();
  };
  Rng rng(3);
  SliceChain c({0.25}, spike, {1.0, 32, 50});
  CHECK_THROWS_AS(c.step(rng), SamplerStuck);
}

TEST_CASE("log posterior density: support, flat prior and ratio oracle") {
  auto ds = std::make_shared<Dataset>(1);
  ds->append(Vec{0.3}, 0.4);

  ModelSpec spec;
  spec.kind = ModelKind::Stationary;
  spec.dims = 1;
  PriorSpec flat;
  flat.flat = true;
  const HyperparameterSpace fs(spec, flat);
  const Hyperparameters h{StationaryCovariance{BaseKernel::Matern52, {{0.4}, 1.2}}, 1e-6};
  CHECK(log_posterior_density(h, ds, fs) == doctest::Approx(log_marginal_likelihood(ds, h)).epsilon(1e-14));

  ModelSpec sspec;
  sspec.kind = ModelKind::Spartan;
  sspec.dims = 1;
  const HyperparameterSpace ss(sspec, {});
  SpartanParams sp{{{0.1}, 1.0}, {{0.5}, 1.0}, {1.2}};
  const Hyperparameters outside{SpartanCovariance{BaseKernel::Matern52, sp, {}}, 1e-6};
  CHECK(log_posterior_density(outside, ds, ss) == -std::numeric_limits<double>::infinity());

  // Two parameter settings: the density difference is the log-likelihood
  // difference plus the log-normal prior difference on log l and log sv.
  ds->append(Vec{0.7}, -0.1);
  ds->append(Vec{0.9}, 0.2);
  const HyperparameterSpace ps(spec, {});
  const Hyperparameters h1{StationaryCovariance{BaseKernel::Matern52, {{0.2}, 0.8}}, 1e-6};
  const Hyperparameters h2{StationaryCovariance{BaseKernel::Matern52, {{0.9}, 2.0}}, 1e-6};
  auto lml = [&](double l, double sv) {
    oracle::GpOracle o;
    for (std::size_t i = 0; i < ds->size(); ++i) o.X.push_back(ds->point(i));
    o.y.assign(ds->y.data(), ds->y.data() + 3);
    o.k = [l, sv](const Vec& a, const Vec& b) { return oracle::matern52(a, b, {l}, sv); };
    o.noise = 1e-6;
    double diag = 0;
    for (int i = 0; i < 3; ++i) diag += sv + 1e-6;
    o.jitter = 1e-10 * diag / 3;
    return o.lml();
  };
  auto log_prior = [](double l, double sv) {
    auto ln = [](double v, double med, double s) {
      const double z = (std::log(v) - std::log(med)) / s;
      return -0.5 * z * z - std::log(s * std::sqrt(2 * std::numbers::pi));
    };
    return ln(l, 0.5, 1.0) + ln(sv, 1.0, 1.0);
  };
  const double expect = (lml(0.2, 0.8) + log_prior(0.2, 0.8)) - (lml(0.9, 2.0) + log_prior(0.9, 2.0));
  CHECK(log_posterior_density(h1, ds, ps) - log_posterior_density(h2, ds, ps) ==
        doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("hyperparameter space round trip") {
  ModelSpec spec;
  spec.kind = ModelKind::Spartan;
  spec.dims = 2;
  spec.learn_noise = true;
  const HyperparameterSpace hs(spec, {});
  CHECK(hs.size() == 2 + 2 + 2 + 2 + 1);
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const Vec u = hs.draw_prior(rng);
    const Vec back = hs.encode(hs.decode(u));
    for (std::size_t k = 0; k < u.size(); ++k) CHECK(back[k] == doctest::Approx(u[k]).epsilon(1e-12));
    CHECK(std::isfinite(hs.log_prior(u)));
  }
}

TEST_CASE("ensemble: determinism, m = 1, positions in the unit box") {
  Rng data_rng(2);
  auto ds = std::make_shared<Dataset>(2);
  for (int i = 0; i < 8; ++i) {
    const Vec x{uniform01(data_rng), uniform01(data_rng)};
    ds->append(x, std::cos(5 * x[0]) * x[1]);
  }
  ModelSpec spec;
  spec.kind = ModelKind::Spartan;
  spec.dims = 2;
  const HyperparameterSpace hs(spec, {});
  Rng a(10), b(10);
  const auto ea = sample_ensemble(ds, hs, {10, 30, {}}, a);
  const auto eb = sample_ensemble(ds, hs, {10, 30, {}}, b);
  CHECK(ea.states == eb.states);
  CHECK(ea.size() == 10);
  CHECK_FALSE(ea.sampler_fallback);
  for (const auto& m : ea.members) {
    const auto& c = std::get<SpartanCovariance>(m.hyper().cov);
    for (double p : c.params.pos) {
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
  }
  Rng c(11);
  const auto one = sample_ensemble(ds, hs, {1, 10, {}}, c);
  CHECK(one.size() == 1);
  CHECK_THROWS_AS(sample_ensemble(ds, hs, {0, 10, {}}, c), InvalidArgument);
}

TEST_CASE("ensemble recovers a known lengthscale") {
  auto ds = sampled_function(0.1, 50, 123);
  ModelSpec spec;
  spec.kind = ModelKind::Stationary;
  spec.base = BaseKernel::SquaredExponential;
  spec.dims = 1;
  const HyperparameterSpace hs(spec, {});
  Rng rng(77);
  const auto ens = sample_ensemble(ds, hs, {40, 150, {}}, rng);
  std::vector<double> ls;
  for (const auto& m : ens.members) ls.push_back(std::get<StationaryCovariance>(m.hyper().cov).params.lengthscales[0]);
  const double med = median(ls);
  CHECK(med >= 0.05);
  CHECK(med <= 0.2);
}

TEST_CASE("warm and cold chains agree in distribution") {
  auto ds = sampled_function(0.2, 12, 5);
  ModelSpec spec;
  spec.kind = ModelKind::Stationary;
  spec.dims = 1;
  const HyperparameterSpace hs(spec, {});
  std::vector<double> warm, cold;
  Rng rw(1), rc(2);
  std::optional<Vec> state;
  for (int rep = 0; rep < 100; ++rep) {
    const auto ew = sample_ensemble(ds, hs, {10, 100, {}}, rw, state);
    state = ew.last_state;
    for (const auto& u : ew.states) warm.push_back(u[0]);
    const auto ec = sample_ensemble(ds, hs, {10, 100, {}}, rc);
    for (const auto& u : ec.states) cold.push_back(u[0]);
  }
  CHECK(oracle::ks_two_sample(warm, cold) < 0.1);
}

TEST_CASE("empty dataset samples from the prior") {
  ModelSpec spec;
  spec.dims = 3;
  const HyperparameterSpace hs(spec, {});
  Rng rng(4);
  const auto ens = sample_ensemble(std::make_shared<Dataset>(3), hs, {5, 10, {}}, rng);
  CHECK(ens.size() == 5);
}
