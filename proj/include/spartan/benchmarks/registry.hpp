#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spartan/strategies/config.hpp"
#include "spartan/strategies/space.hpp"

namespace spartan::bench {

struct Benchmark {
  std::string name;
  SearchSpace space;
  Objective evaluator;
  std::optional<double> known_minimum;
  std::optional<std::vector<double>> known_minimizer;        // raw coordinates
  std::optional<std::vector<int>> known_categorical_minimizer;
  std::string description;
};

// "exp2d", "hartmann6", "michalewicz10", "mixed-separable"
const std::vector<std::string>& benchmark_names();

// Throws InvalidArgument for an unknown name.
Benchmark make_benchmark(std::string_view name);

}  // namespace spartan::bench
