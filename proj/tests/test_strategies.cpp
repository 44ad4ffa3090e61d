#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "spartan/error.hpp"
#include "spartan/strategies/loops.hpp"

using namespace spartan;
using Vec = std::vector<double>;

namespace {

SearchSpace box(std::size_t d, double lo = 0.0, double hi = 1.0) {
  SearchSpace s;
  s.continuous.assign(d, {lo, hi});
  return s;
}

RunConfig quick(std::size_t n_init, std::size_t n_iter, std::uint64_t seed) {
  RunConfig c;
  c.n_init = n_init;
  c.n_iter = n_iter;
  c.mcmc_samples = 5;
  c.burn_in = 20;
  c.seed = seed;
  c.record_wall_time = false;
  return c;
}

const Objective quadratic = [](std::span<const double> x, std::span<const int>) {
  return (x[0] - 0.3) * (x[0] - 0.3);
};

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

TEST_CASE("latin hypercube bin property and determinism") {
  Rng rng(1);
  const auto p = latin_hypercube(4, 1, rng);
  std::vector<int> bins(4, 0);
  for (const auto& x : p) ++bins[static_cast<int>(x[0] * 4)];
  CHECK(bins == std::vector<int>{1, 1, 1, 1});

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng r(seed);
    const std::size_t n = 3 + seed, d = 1 + seed % 4;
    const auto pts = latin_hypercube(n, d, r);
    for (std::size_t k = 0; k < d; ++k) {
      std::vector<int> c(n, 0);
      for (const auto& x : pts) ++c[static_cast<std::size_t>(x[k] * static_cast<double>(n))];
      CHECK(std::all_of(c.begin(), c.end(), [](int v) { return v == 1; }));
    }
    Rng r2(seed);
    CHECK(latin_hypercube(n, d, r2) == pts);
  }
}

TEST_CASE("unit scaling") {
  SearchSpace s = box(1, -2.0, 18.0);
  CHECK(to_unit(s, Vec{8.0})[0] == 0.5);
  CHECK(from_unit(s, Vec{0.0})[0] == -2.0);
  CHECK(from_unit(s, Vec{1.0})[0] == 18.0);
  CHECK_THROWS_AS(to_unit(s, Vec{18.5}), InvalidArgument);
  CHECK_THROWS_AS(from_unit(s, Vec{-0.1}), InvalidArgument);

  SearchSpace m;
  m.continuous = {{-5, 10}, {0, 15}, {-1e-3, 1e-3}};
  Rng rng(2);
  for (int t = 0; t < 1000; ++t) {
    Vec raw(3);
    for (std::size_t k = 0; k < 3; ++k) raw[k] = m.continuous[k].lower + uniform01(rng) * (m.continuous[k].upper - m.continuous[k].lower);
    const Vec back = from_unit(m, to_unit(m, raw));
    for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(back[k] - raw[k]) < 1e-12);
  }
}

TEST_CASE("search space validation and categorical enumeration") {
  SearchSpace bad = box(1, 1.0, 1.0);
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  SearchSpace cat;
  cat.continuous = {{0, 1}};
  cat.categorical = {1};
  CHECK_THROWS_AS(cat.validate(), InvalidArgument);
  cat.categorical = {3, 2};
  CHECK(cat.categorical_size() == 6);
  CHECK(categorical_config(cat, 0) == std::vector<int>{0, 0});
  CHECK(categorical_config(cat, 1) == std::vector<int>{1, 0});
  CHECK(categorical_config(cat, 4) == std::vector<int>{1, 1});
}

TEST_CASE("bo: constant objective, trace invariants, determinism") {
  const Objective constant = [](std::span<const double>, std::span<const int>) { return 2.5; };
  const SearchSpace s = box(2);
  const Trace t = run_bo(constant, s, quick(4, 5, 3));
  CHECK(t.records.size() == 9);
  CHECK(t.records[3].best_y == 2.5);
  validate_trace(t, s);

  const Trace a = run_bo(quadratic, box(1), quick(5, 6, 7));
  const Trace b = run_bo(quadratic, box(1), quick(5, 6, 7));
  CHECK(a == b);
  CHECK(a.records[0].phase == Phase::Init);
  CHECK(a.records[5].phase == Phase::Bo);
}

TEST_CASE("bo: 1-D quadratic within 20 iterations") {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Trace t = run_bo(quadratic, box(1), quick(10, 20, seed));
    validate_trace(t, box(1));
    hits += t.best_y() < 1e-3 ? 1 : 0;
  }
  CHECK(hits >= 9);
}

TEST_CASE("non-finite objective values are penalized with the worst seen value") {
  int calls = 0;
  const Objective sometimes_nan = [&calls](std::span<const double> x, std::span<const int>) {
    return ++calls == 3 ? std::numeric_limits<double>::quiet_NaN() : x[0];
  };
  const Trace t = run_bo(sometimes_nan, box(1), quick(4, 2, 1));
  CHECK(t.penalized == 1);
  CHECK(t.records[2].y == std::max(t.records[0].y, t.records[1].y));
  validate_trace(t, box(1));
}

TEST_CASE("common random numbers: identical initial designs across algorithms") {
  const SearchSpace s = box(2, -1, 1);
  const Objective f = [](std::span<const double> x, std::span<const int>) { return x[0] * x[0] + std::sin(3 * x[1]); };
  const Trace a = run_bo(f, s, quick(6, 1, 11));
  const Trace b = run_sbo(f, s, quick(6, 1, 11));
  const Trace c = run_spbo(f, s, quick(6, 2, 11));
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(a.records[i] == b.records[i]);
    CHECK(a.records[i] == c.records[i]);
  }
}

TEST_CASE("sbo with a fixed local centre runs like bo structurally") {
  RunConfig cfg = quick(5, 6, 2);
  cfg.fixed_pos = Vec{0.5, 0.5};
  const Trace t = run_sbo(quadratic, box(2), cfg);
  CHECK(t.records.size() == 11);
  CHECK(t.algorithm == "sbo");
  validate_trace(t, box(2));
}

TEST_CASE("spbo: perturbation sizes and budget accounting") {
  const SearchSpace s = box(2, -3, 5);
  const Objective f = [](std::span<const double> x, std::span<const int>) { return std::pow(x[0] - 1, 2) + std::abs(x[1]); };

  RunConfig none = quick(4, 6, 5);
  none.spbo.T = 0;
  const Trace t0 = run_spbo(f, s, none);
  CHECK(t0.records.size() == 10);
  for (std::size_t i = 4; i < t0.records.size(); ++i) CHECK(t0.records[i].phase == Phase::Bo);

  RunConfig cfg = quick(4, 12, 5);
  cfg.spbo.c = 0.05;
  cfg.spbo.T = 5;
  const Trace t = run_spbo(f, s, cfg);
  validate_trace(t, s);
  CHECK(t.records.size() == 16);
  std::size_t i = 0, perturbed = 0;
  for (std::size_t r = 4; r < t.records.size(); ++r) {
    if (t.records[r].phase == Phase::Bo) {
      ++i;
      continue;
    }
    REQUIRE(t.records[r].phase == Phase::Perturbation);
    ++perturbed;
    const double step = 0.05 / std::pow(static_cast<double>(i), 0.101);
    const Vec ub = to_unit(s, t.records[r - 1].x), up = to_unit(s, t.records[r].x);
    for (std::size_t k = 0; k < 2; ++k) {
      const bool clipped = up[k] == 0.0 || up[k] == 1.0;
      if (!clipped) CHECK(std::abs(std::abs(up[k] - ub[k]) - step) < 1e-12);
    }
    if (i == 1)
      for (std::size_t k = 0; k < 2; ++k) CHECK(std::abs(std::abs(up[k] - ub[k]) - 0.05) < 1e-12);
  }
  CHECK(perturbed == 4);  // i = 1..T-1
}

TEST_CASE("hbo: exhaustive inner loop and budget") {
  SearchSpace s;
  s.continuous = {{0, 1}};
  s.categorical = {3};
  const Objective f = [](std::span<const double> x, std::span<const int> c) {
    const double h[] = {0.2, 0.0, 0.5};
    return (x[0] - 0.6) * (x[0] - 0.6) + h[c[0]];
  };
  RunConfig cfg = quick(3, 1, 4);
  cfg.hbo.outer = 4;
  cfg.hbo.inner = 3;
  const Trace t = run_hbo(f, s, cfg);
  validate_trace(t, s);
  CHECK(t.records.size() == 3 + 4 * 3);
  for (std::size_t block = 0; block < 4; ++block) {
    std::vector<int> seen;
    for (std::size_t j = 0; j < 3; ++j) {
      const auto& r = t.records[3 + 3 * block + j];
      CHECK(r.phase == Phase::HboInner);
      seen.push_back(r.cat[0]);
    }
    std::sort(seen.begin(), seen.end());
    CHECK(seen == std::vector<int>{0, 1, 2});
  }
}

TEST_CASE("hbo: Hamming-kernel inner loop respects its budget") {
  SearchSpace s;
  s.continuous = {{0, 1}};
  s.categorical = {3, 3, 2};
  const Objective f = [](std::span<const double> x, std::span<const int> c) {
    return x[0] + (c[0] == 2 ? -1.0 : 0.0) + 0.3 * c[1] - 0.2 * c[2];
  };
  RunConfig cfg = quick(3, 1, 6);
  cfg.hbo.outer = 3;
  cfg.hbo.inner = 4;
  cfg.hbo.reevaluate = true;
  const Trace t = run_hbo(f, s, cfg);
  validate_trace(t, s);
  CHECK(t.records.size() <= 3 + 3 * (4 + 1));
  std::size_t outer = 0;
  for (const auto& r : t.records) outer += r.phase == Phase::HboOuter ? 1 : 0;
  CHECK(outer == 3);
  CHECK_THROWS_AS(run_hbo(f, box(1), cfg), InvalidArgument);
}

TEST_CASE("validate_trace catches broken traces") {
  const Trace t = run_bo(quadratic, box(1), quick(3, 1, 0));
  Trace broken = t;
  broken.records[1].best_y = broken.records[0].best_y - 1;
  CHECK_THROWS_AS(validate_trace(broken, box(1)), InvalidArgument);
  broken = t;
  broken.records[0].x[0] = 2.0;
  CHECK_THROWS_AS(validate_trace(broken, box(1)), InvalidArgument);
}

TEST_CASE("spartan likelihood prefers a local centre at the exp2d minimizer") {
  SearchSpace s = box(2, -2, 18);
  const Objective f = [](std::span<const double> x, std::span<const int>) {
    return x[0] * std::exp(-x[0] * x[0] - x[1] * x[1]);
  };
  const Vec target = to_unit(s, Vec{-1 / std::sqrt(2.0), 0.0});
  int members = 0;
  double margin = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    RunConfig cfg;
    cfg.n_iter = 40;
    cfg.seed = seed;
    cfg.record_wall_time = false;
    const Trace t = run_sbo(f, s, cfg);
    if (t.best_y() > -0.3) continue;  // basin never sampled
    double m = 0, v = 0;
    for (const auto& r : t.records) m += r.y;
    m /= static_cast<double>(t.records.size());
    for (const auto& r : t.records) v += (r.y - m) * (r.y - m);
    const double sd = std::sqrt(v / static_cast<double>(t.records.size()));
    auto ds = std::make_shared<Dataset>(2);
    for (const auto& r : t.records) ds->append(to_unit(s, r.x), (r.y - m) / sd);
    Rng rng(seed);
    ContinuousProposer p(SurrogateKernel::Spartan, 2, cfg, rng);
    for (const auto& r : t.records) p.observe(to_unit(s, r.x), r.y);
    p.propose(cfg.n_iter + 1);
    for (const auto& member : p.last_ensemble()->members) {
      Hyperparameters near = member.hyper(), far = member.hyper();
      std::get<SpartanCovariance>(near.cov).params.pos = target;
      std::get<SpartanCovariance>(far.cov).params.pos = Vec{0.8, 0.8};
      const double ln = PosteriorSample::fit(ds, near).log_marginal_likelihood();
      const double lf = PosteriorSample::fit(ds, far).log_marginal_likelihood();
      margin += ln - lf;
      ++members;
    }
  }
  REQUIRE(members > 0);
  CHECK(margin > 0);
}
