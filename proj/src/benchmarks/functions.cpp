#include "spartan/benchmarks/functions.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "spartan/error.hpp"

namespace spartan::bench {

namespace {

// Hartmann-6 constants as tabulated in the global-optimization test-function
// literature (Dixon & Szego 1978; also the SFU virtual library of simulation
// experiments). Not derived here; checked by the unit tests against the known
// minimizer and by local descent.
constexpr std::array<double, 4> kHartmannAlpha = {1.0, 1.2, 3.0, 3.2};
constexpr std::array<std::array<double, 6>, 4> kHartmannA = {{
    {10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
    {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
    {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
    {17.0, 8.0, 0.05, 10.0, 0.1, 14.0},
}};
constexpr std::array<std::array<double, 6>, 4> kHartmannP = {{
    {0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
    {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
    {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
    {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381},
}};

constexpr std::array<double, 4> kMixedCategoryOffsets = {0.0, -0.25, 0.3, 0.1};

}  // namespace

double exponential_2d(std::span<const double> x) {
  if (x.size() != 2) throw InvalidArgument("exponential_2d: expects 2 coordinates");
  return x[0] * std::exp(-x[0] * x[0] - x[1] * x[1]);
}

double hartmann_6d(std::span<const double> x) {
  if (x.size() != 6) throw InvalidArgument("hartmann_6d: expects 6 coordinates");
  double total = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < 6; ++j) {
      const double t = x[j] - kHartmannP[i][j];
      inner += kHartmannA[i][j] * t * t;
    }
    total += kHartmannAlpha[i] * std::exp(-inner);
  }
  return -total;
}

double michalewicz(std::span<const double> x, int m) {
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double s = std::sin(static_cast<double>(i + 1) * x[i] * x[i] / std::numbers::pi);
    total += std::sin(x[i]) * std::pow(s, 2 * m);
  }
  return -total;
}

double mixed_separable(std::span<const double> x, std::span<const int> cat) {
  if (x.size() != 1 || cat.size() != 1) throw InvalidArgument("mixed_separable: expects (1 continuous, 1 categorical)");
  if (cat[0] < 0 || cat[0] >= static_cast<int>(kMixedCategoryOffsets.size()))
    throw InvalidArgument("mixed_separable: category out of range");
  const double t = x[0] - kMixedContinuousMinimizer;
  return 2.0 * t * t + kMixedCategoryOffsets[static_cast<std::size_t>(cat[0])];
}

}  // namespace spartan::bench
