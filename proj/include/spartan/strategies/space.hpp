#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spartan/random.hpp"

namespace spartan {

struct Bounds {
  double lower = 0.0;
  double upper = 1.0;
};

// Box-bounded continuous block plus categorical variables given by their
// cardinalities. Internally continuous coordinates live in [0,1]^d.
struct SearchSpace {
  std::vector<Bounds> continuous;
  std::vector<int> categorical;

  std::size_t continuous_dims() const { return continuous.size(); }
  std::size_t categorical_dims() const { return categorical.size(); }

  // Number of categorical configurations, saturating at SIZE_MAX.
  std::size_t categorical_size() const;

  // lower < upper for every dimension, cardinalities >= 2.
  void validate() const;

  bool contains(std::span<const double> raw, std::span<const int> cat) const;
};

// Affine per-dimension maps between raw coordinates and [0,1]. Both throw
// InvalidArgument for out-of-range inputs.
std::vector<double> to_unit(const SearchSpace& space, std::span<const double> raw);
std::vector<double> from_unit(const SearchSpace& space, std::span<const double> unit);

// One point per equal-width bin in every dimension, jittered uniformly within
// its bin; rows are points.
std::vector<std::vector<double>> latin_hypercube(std::size_t n, std::size_t d, Rng& rng);

// The i-th categorical configuration in mixed-radix order (first variable
// fastest).
std::vector<int> categorical_config(const SearchSpace& space, std::size_t index);

}  // namespace spartan
