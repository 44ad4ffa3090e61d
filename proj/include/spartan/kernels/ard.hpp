#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace spartan {

enum class BaseKernel { SquaredExponential, Matern52 };

std::string_view to_string(BaseKernel base);

// Stationary ARD hyperparameters in unit-hypercube coordinates.
struct ArdParams {
  std::vector<double> lengthscales;
  double signal_variance = 1.0;

  std::size_t dims() const { return lengthscales.size(); }

  // Throws InvalidArgument unless every lengthscale and the signal variance
  // are strictly positive and finite.
  void validate() const;
};

// Squared ARD distance sum_k ((x_k - x2_k) / l_k)^2.
double scaled_sq_distance(std::span<const double> x, std::span<const double> x2,
                          std::span<const double> lengthscales);

// Covariance as a function of the squared scaled distance.
double se_from_sq(double r2, double signal_variance);
double matern52_from_sq(double r2, double signal_variance);

double se_ard(std::span<const double> x, std::span<const double> x2, const ArdParams& p);
double matern52_ard(std::span<const double> x, std::span<const double> x2, const ArdParams& p);

double ard_kernel(BaseKernel base, std::span<const double> x, std::span<const double> x2,
                  const ArdParams& p);

}  // namespace spartan
