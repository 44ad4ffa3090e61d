#pragma once

#include <span>

namespace spartan::bench {

// x1 * exp(-x1^2 - x2^2) on [-2, 18]^2. Minimum -exp(-1/2)/sqrt(2) at
// (-1/sqrt(2), 0).
double exponential_2d(std::span<const double> x);

// Six-dimensional Hartmann function on [0,1]^6.
double hartmann_6d(std::span<const double> x);

// -sum_i sin(x_i) sin^(2m)(i x_i^2 / pi) on [0, pi]^d, d = x.size().
double michalewicz(std::span<const double> x, int m = 10);

// Mixed benchmark used to exercise HBO: g(x) + h(c) with
// g(x) = 2 (x - 0.37)^2 on [0,1] and h over four categories.
double mixed_separable(std::span<const double> x, std::span<const int> cat);

inline constexpr double kExp2dMinimum = -0.4288819424803534;  // -exp(-1/2)/sqrt(2)
inline constexpr double kHartmann6Minimum = -3.32236801141552;
inline constexpr double kMichalewicz10Minimum = -9.660151715;  // sum of the ten 1-D minima
inline constexpr double kMixedContinuousMinimizer = 0.37;
inline constexpr int kMixedBestCategory = 1;
inline constexpr double kMixedMinimum = -0.25;

}  // namespace spartan::bench
