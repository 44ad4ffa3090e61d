#include "spartan/strategies/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "spartan/error.hpp"

namespace spartan {

std::size_t SearchSpace::categorical_size() const {
  std::size_t total = 1;
  for (int c : categorical) {
    const auto cc = static_cast<std::size_t>(c);
    if (total > std::numeric_limits<std::size_t>::max() / cc) return std::numeric_limits<std::size_t>::max();
    total *= cc;
  }
  return total;
}

void SearchSpace::validate() const {
  if (continuous.empty() && categorical.empty()) throw InvalidArgument("SearchSpace: no variables");
  for (std::size_t k = 0; k < continuous.size(); ++k) {
    const auto& b = continuous[k];
    if (!std::isfinite(b.lower) || !std::isfinite(b.upper) || !(b.lower < b.upper))
      throw InvalidArgument("SearchSpace: dimension " + std::to_string(k) + " needs lower < upper");
  }
  for (int c : categorical) {
    if (c < 2) throw InvalidArgument("SearchSpace: categorical cardinality must be >= 2");
  }
}

bool SearchSpace::contains(std::span<const double> raw, std::span<const int> cat) const {
  if (raw.size() != continuous.size() || cat.size() != categorical.size()) return false;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (!(raw[k] >= continuous[k].lower && raw[k] <= continuous[k].upper)) return false;
  }
  for (std::size_t k = 0; k < cat.size(); ++k) {
    if (cat[k] < 0 || cat[k] >= categorical[k]) return false;
  }
  return true;
}

std::vector<double> to_unit(const SearchSpace& space, std::span<const double> raw) {
  if (raw.size() != space.continuous.size()) throw InvalidArgument("to_unit: dimension mismatch");
  std::vector<double> u(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const auto& b = space.continuous[k];
    if (!(raw[k] >= b.lower && raw[k] <= b.upper))
      throw InvalidArgument("to_unit: coordinate " + std::to_string(k) + " out of range");
    u[k] = std::clamp((raw[k] - b.lower) / (b.upper - b.lower), 0.0, 1.0);
  }
  return u;
}

std::vector<double> from_unit(const SearchSpace& space, std::span<const double> unit) {
  if (unit.size() != space.continuous.size()) throw InvalidArgument("from_unit: dimension mismatch");
  std::vector<double> raw(unit.size());
  for (std::size_t k = 0; k < unit.size(); ++k) {
    if (!(unit[k] >= 0.0 && unit[k] <= 1.0))
      throw InvalidArgument("from_unit: coordinate " + std::to_string(k) + " out of range");
    const auto& b = space.continuous[k];
    raw[k] = std::clamp(b.lower + unit[k] * (b.upper - b.lower), b.lower, b.upper);
  }
  return raw;
}

std::vector<std::vector<double>> latin_hypercube(std::size_t n, std::size_t d, Rng& rng) {
  if (n < 1) throw InvalidArgument("latin_hypercube: n must be >= 1");
  std::vector<std::vector<double>> pts(n, std::vector<double>(d));
  std::vector<std::size_t> perm(n);
  const double width = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < d; ++k) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_index(rng, i)]);
    for (std::size_t i = 0; i < n; ++i) {
      // Stays strictly below the bin's upper edge.
      const double v = (static_cast<double>(perm[i]) + uniform01(rng)) * width;
      pts[i][k] = std::min(v, std::nextafter((static_cast<double>(perm[i]) + 1.0) * width, 0.0));
    }
  }
  return pts;
}

std::vector<int> categorical_config(const SearchSpace& space, std::size_t index) {
  std::vector<int> cfg(space.categorical.size());
  for (std::size_t k = 0; k < cfg.size(); ++k) {
    const auto c = static_cast<std::size_t>(space.categorical[k]);
    cfg[k] = static_cast<int>(index % c);
    index /= c;
  }
  return cfg;
}

}  // namespace spartan
