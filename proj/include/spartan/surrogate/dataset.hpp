#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "spartan/kernels/covariance.hpp"

namespace spartan {

// Observations (x_i, y_i). Points are rows of X; for categorical models the
// coordinates are integer levels stored as doubles.
struct Dataset {
  PointMatrix X;
  Eigen::VectorXd y;

  Dataset() = default;
  explicit Dataset(std::size_t dims) : X(0, static_cast<Eigen::Index>(dims)), y(0) {}
  Dataset(PointMatrix points, Eigen::VectorXd values);

  std::size_t size() const { return static_cast<std::size_t>(y.size()); }
  std::size_t dims() const { return static_cast<std::size_t>(X.cols()); }
  bool empty() const { return y.size() == 0; }

  void append(std::span<const double> x, double value);
  std::vector<double> point(std::size_t i) const;

  // Throws InvalidArgument if any coordinate is outside [0,1].
  void check_unit_box() const;
};

}  // namespace spartan
