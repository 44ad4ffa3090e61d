#pragma once

#include <functional>
#include <span>
#include <vector>

#include "spartan/random.hpp"

namespace spartan {

using LogDensity = std::function<double(std::span<const double>)>;

struct SliceOptions {
  double width = 1.0;         // initial bracket width per coordinate
  int max_step_out = 32;      // bracket doublings allowed on each side, in total
  int max_shrink = 1000;      // shrinkage proposals before SamplerStuck
};

// Univariate stepping-out / shrinkage slice sampling applied to each
// coordinate in a random order. Keeps the current log density so it is not
// re-evaluated between sweeps.
class SliceChain {
 public:
  // Throws InvalidArgument if density(state) is not finite.
  SliceChain(std::vector<double> state, LogDensity density, SliceOptions options = {});

  // One full sweep. Throws SamplerStuck after max_shrink rejections on a
  // coordinate.
  void step(Rng& rng);

  const std::vector<double>& state() const { return state_; }
  double log_density() const { return log_density_; }
  std::size_t evaluations() const { return evaluations_; }

 private:
  double eval(std::span<const double> u);
  void update_coordinate(std::size_t k, Rng& rng);

  std::vector<double> state_;
  LogDensity density_;
  SliceOptions options_;
  double log_density_ = 0.0;
  std::size_t evaluations_ = 0;
};

// One sweep from `state`; see SliceChain.
std::vector<double> slice_step(std::span<const double> state, const LogDensity& density, Rng& rng,
                               const SliceOptions& options = {});

}  // namespace spartan
