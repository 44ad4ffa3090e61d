#include "spartan/benchmarks/registry.hpp"

#include <cmath>
#include <numbers>

#include "spartan/benchmarks/functions.hpp"
#include "spartan/error.hpp"

namespace spartan::bench {

const std::vector<std::string>& benchmark_names() {
  static const std::vector<std::string> names = {"exp2d", "hartmann6", "michalewicz10", "mixed-separable"};
  return names;
}

Benchmark make_benchmark(std::string_view name) {
  Benchmark b;
  b.name = std::string(name);
  if (name == "exp2d") {
    b.space.continuous = {{-2.0, 18.0}, {-2.0, 18.0}};
    b.evaluator = [](std::span<const double> x, std::span<const int>) { return exponential_2d(x); };
    b.known_minimum = kExp2dMinimum;
    b.known_minimizer = std::vector<double>{-1.0 / std::numbers::sqrt2, 0.0};
    b.description = "x1 exp(-x1^2 - x2^2) on [-2,18]^2; flat almost everywhere";
  } else if (name == "hartmann6") {
    b.space.continuous.assign(6, {0.0, 1.0});
    b.evaluator = [](std::span<const double> x, std::span<const int>) { return hartmann_6d(x); };
    b.known_minimum = kHartmann6Minimum;
    b.known_minimizer = std::vector<double>{0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573};
    b.description = "Hartmann 6-D on [0,1]^6";
  } else if (name == "michalewicz10") {
    b.space.continuous.assign(10, {0.0, std::numbers::pi});
    b.evaluator = [](std::span<const double> x, std::span<const int>) { return michalewicz(x, 10); };
    b.known_minimum = kMichalewicz10Minimum;
    b.description = "Michalewicz 10-D, m = 10, on [0,pi]^10";
  } else if (name == "mixed-separable") {
    b.space.continuous = {{0.0, 1.0}};
    b.space.categorical = {4};
    b.evaluator = [](std::span<const double> x, std::span<const int> c) { return mixed_separable(x, c); };
    b.known_minimum = kMixedMinimum;
    b.known_minimizer = std::vector<double>{kMixedContinuousMinimizer};
    b.known_categorical_minimizer = std::vector<int>{kMixedBestCategory};
    b.description = "2 (x - 0.37)^2 + h(c), one continuous and one 4-level categorical variable";
  } else {
    std::string valid;
    for (const auto& n : benchmark_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw InvalidArgument("unknown benchmark '" + std::string(name) + "' (valid: " + valid + ")");
  }
  return b;
}

}  // namespace spartan::bench
