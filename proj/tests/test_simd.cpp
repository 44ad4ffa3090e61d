#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "spartan/error.hpp"
#include "spartan/kernels/covariance.hpp"
#include "spartan/random.hpp"
#include "spartan/simd/dispatch.hpp"
#include "spartan/simd/row_kernels.hpp"

using namespace spartan;
using namespace spartan::simd;

namespace {

struct Block {
  std::size_t n, d, ld;
  std::vector<double> cols, x, inv_ls;
};

Block random_block(Rng& rng, std::size_t n, std::size_t d) {
  Block b{n, d, n + 3, {}, {}, {}};
  b.cols.assign(b.ld * d, -99.0);  // padding must never be read into results
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < n; ++j) b.cols[k * b.ld + j] = uniform01(rng);
  for (std::size_t k = 0; k < d; ++k) {
    b.x.push_back(uniform01(rng));
    b.inv_ls.push_back(1.0 / (0.02 + uniform01(rng)));
  }
  return b;
}

ArdRowArgs args_for(const Block& b, double* out) {
  return {b.x.data(), b.cols.data(), b.n, b.ld, b.d, b.inv_ls.data(), 1.7, out};
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("scalar backend is always available and can be forced") {
  CHECK(backend_supported(Backend::Scalar));
  const Backend before = active_backend();
  force_backend(Backend::Scalar);
  CHECK(active_backend() == Backend::Scalar);
  force_backend(before);
  CHECK(to_string(Backend::Avx2) == "avx2");
}

TEST_CASE("scalar row kernels match the pairwise definition") {
  Rng rng(1);
  const Block b = random_block(rng, 13, 3);
  std::vector<double> out(b.n);
  scalar::matern52_row(args_for(b, out.data()));
  for (std::size_t j = 0; j < b.n; ++j) {
    std::vector<double> xj(b.d), ls(b.d);
    for (std::size_t k = 0; k < b.d; ++k) {
      xj[k] = b.cols[k * b.ld + j];
      ls[k] = 1.0 / b.inv_ls[k];
    }
    CHECK(out[j] == doctest::Approx(matern52_ard(b.x, xj, {ls, 1.7})).epsilon(1e-13));
  }
}

#if defined(SPARTAN_HAVE_AVX2)

TEST_CASE("avx2 row kernels equal scalar within 1e-12 relative") {
  if (!backend_supported(Backend::Avx2)) {
    MESSAGE("CPU lacks AVX2/FMA; equivalence not exercised");
    return;
  }
  Rng rng(2);
  double worst = 0;
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 64u, 101u}) {
    for (std::size_t d : {1u, 2u, 6u, 10u}) {
      const Block b = random_block(rng, n, d);
      std::vector<double> s(n + 4, -1.0), v(n + 4, -1.0);
      scalar::se_row(args_for(b, s.data()));
      avx2::se_row(args_for(b, v.data()));
      for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, rel(v[j], s[j]));
      CHECK(v[n] == -1.0);  // no write past n
      scalar::matern52_row(args_for(b, s.data()));
      avx2::matern52_row(args_for(b, v.data()));
      for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, rel(v[j], s[j]));
      CHECK(v[n] == -1.0);
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("avx2 exp matches scalar exp across the used range") {
  if (!backend_supported(Backend::Avx2)) return;
  std::vector<double> in;
  for (double x = -745.0; x <= 0.0; x += 0.173) in.push_back(x);
  in.push_back(0.0);
  in.push_back(-1e-300);
  in.push_back(-800.0);
  std::vector<double> s(in.size()), v(in.size());
  scalar::exp_batch(in.data(), s.data(), in.size());
  avx2::exp_batch(in.data(), v.data(), in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (s[i] < 1e-300) {
      CHECK(v[i] <= 1e-300);
    } else {
      CHECK(rel(v[i], s[i]) < 1e-12);
    }
  }
}

TEST_CASE("avx2 weighted sum equals scalar") {
  if (!backend_supported(Backend::Avx2)) return;
  Rng rng(4);
  for (std::size_t n : {1u, 4u, 6u, 17u}) {
    std::vector<double> kl(n), kg(n), ll(n), lg(n);
    for (std::size_t j = 0; j < n; ++j) {
      kl[j] = uniform01(rng);
      kg[j] = uniform01(rng);
      ll[j] = uniform01(rng);
      lg[j] = uniform01(rng);
    }
    std::vector<double> s(n), v(n);
    WeightedSumArgs a{kl.data(), kg.data(), ll.data(), lg.data(), 0.3, 0.9, n, s.data()};
    scalar::weighted_sum(a);
    a.out = v.data();
    avx2::weighted_sum(a);
    for (std::size_t j = 0; j < n; ++j) CHECK(rel(v[j], s[j]) < 1e-12);
  }
}

TEST_CASE("evaluator results agree across backends") {
  if (!backend_supported(Backend::Avx2)) return;
  Rng rng(8);
  PointMatrix X(37, 4);
  for (int i = 0; i < 37; ++i)
    for (int k = 0; k < 4; ++k) X(i, k) = uniform01(rng);
  SpartanParams sp{{{0.1, 0.2, 0.3, 0.4}, 1.2}, {{0.8, 0.9, 1.0, 1.1}, 0.7}, {0.2, 0.4, 0.6, 0.8}};
  const Covariance cov = SpartanCovariance{BaseKernel::Matern52, sp, {}};
  const Backend before = active_backend();
  force_backend(Backend::Scalar);
  const Eigen::MatrixXd gs = CovarianceEvaluator(cov, X).gram_without_jitter(0.0);
  force_backend(Backend::Avx2);
  const Eigen::MatrixXd gv = CovarianceEvaluator(cov, X).gram_without_jitter(0.0);
  force_backend(before);
  for (int i = 0; i < 37; ++i)
    for (int j = 0; j < 37; ++j) CHECK(rel(gv(i, j), gs(i, j)) < 1e-12);
}

#endif
