#include "spartan/kernels/ard.hpp"

#include <cmath>
#include <string>

#include "spartan/error.hpp"

namespace spartan {

std::string_view to_string(BaseKernel base) {
  switch (base) {
    case BaseKernel::SquaredExponential:
      return "se-ard";
    case BaseKernel::Matern52:
      return "matern52-ard";
  }
  return "unknown";
}

void ArdParams::validate() const {
  if (lengthscales.empty()) throw InvalidArgument("ArdParams: no lengthscales");
  for (double l : lengthscales) {
    if (!(l > 0.0) || !std::isfinite(l))
      throw InvalidArgument("ArdParams: lengthscale must be positive, got " + std::to_string(l));
  }
  if (!(signal_variance > 0.0) || !std::isfinite(signal_variance))
    throw InvalidArgument("ArdParams: signal variance must be positive");
}

double scaled_sq_distance(std::span<const double> x, std::span<const double> x2,
                          std::span<const double> lengthscales) {
  if (x.size() != x2.size() || x.size() != lengthscales.size())
    throw InvalidArgument("ARD kernel: dimension mismatch (" + std::to_string(x.size()) + ", " +
                          std::to_string(x2.size()) + ", " +
                          std::to_string(lengthscales.size()) + ")");
  double r2 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double t = (x[k] - x2[k]) / lengthscales[k];
    r2 += t * t;
  }
  return r2;
}

double se_from_sq(double r2, double signal_variance) { return signal_variance * std::exp(-0.5 * r2); }

double matern52_from_sq(double r2, double signal_variance) {
  const double sqrt5_r = std::sqrt(5.0 * r2);
  return signal_variance * (1.0 + sqrt5_r + (5.0 / 3.0) * r2) * std::exp(-sqrt5_r);
}

double se_ard(std::span<const double> x, std::span<const double> x2, const ArdParams& p) {
  return se_from_sq(scaled_sq_distance(x, x2, p.lengthscales), p.signal_variance);
}

double matern52_ard(std::span<const double> x, std::span<const double> x2, const ArdParams& p) {
  return matern52_from_sq(scaled_sq_distance(x, x2, p.lengthscales), p.signal_variance);
}

double ard_kernel(BaseKernel base, std::span<const double> x, std::span<const double> x2,
                  const ArdParams& p) {
  return base == BaseKernel::Matern52 ? matern52_ard(x, x2, p) : se_ard(x, x2, p);
}

}  // namespace spartan
