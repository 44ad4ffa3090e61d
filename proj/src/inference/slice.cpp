#include "spartan/inference/slice.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "spartan/error.hpp"

namespace spartan {

SliceChain::SliceChain(std::vector<double> state, LogDensity density, SliceOptions options)
    : state_(std::move(state)), density_(std::move(density)), options_(options) {
  if (!(options_.width > 0.0)) throw InvalidArgument("slice sampler: width must be positive");
  log_density_ = eval(state_);
  if (!std::isfinite(log_density_)) throw InvalidArgument("slice sampler: initial state has no density");
}

double SliceChain::eval(std::span<const double> u) {
  ++evaluations_;
  const double v = density_(u);
  return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
}

void SliceChain::update_coordinate(std::size_t k, Rng& rng) {
  const double x0 = state_[k];
  // Slice level: log(u * p(x0)) with u uniform on (0,1).
  const double level = log_density_ + std::log(uniform_open01(rng));
  std::vector<double> probe = state_;
  auto at = [&](double v) {
    probe[k] = v;
    return eval(probe);
  };

  const double w = options_.width;
  double left = x0 - w * uniform01(rng);
  double right = left + w;
  int steps_left = static_cast<int>(std::floor(options_.max_step_out * uniform01(rng)));
  int steps_right = options_.max_step_out - 1 - steps_left;
  while (steps_left > 0 && at(left) > level) {
    left -= w;
    --steps_left;
  }
  while (steps_right > 0 && at(right) > level) {
    right += w;
    --steps_right;
  }

  for (int shrink = 0; shrink < options_.max_shrink; ++shrink) {
    const double x1 = left + uniform01(rng) * (right - left);
    const double lp = at(x1);
    if (lp > level) {
      state_[k] = x1;
      log_density_ = lp;
      return;
    }
    if (x1 < x0)
      left = x1;
    else
      right = x1;
  }
  throw SamplerStuck("slice sampler: no acceptance after " + std::to_string(options_.max_shrink) +
                     " shrinkage steps on coordinate " + std::to_string(k));
}

void SliceChain::step(Rng& rng) {
  std::vector<std::size_t> order(state_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Fisher-Yates with the library's own index mapping.
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[uniform_index(rng, i)]);
  for (std::size_t k : order) update_coordinate(k, rng);
}

std::vector<double> slice_step(std::span<const double> state, const LogDensity& density, Rng& rng,
                               const SliceOptions& options) {
  SliceChain chain(std::vector<double>(state.begin(), state.end()), density, options);
  chain.step(rng);
  return chain.state();
}

}  // namespace spartan
