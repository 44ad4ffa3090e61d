#include "spartan/surrogate/dataset.hpp"

#include <string>

#include "spartan/error.hpp"

namespace spartan {

Dataset::Dataset(PointMatrix points, Eigen::VectorXd values) : X(std::move(points)), y(std::move(values)) {
  if (X.rows() != y.size()) throw InvalidArgument("Dataset: |X| != |y|");
}

void Dataset::append(std::span<const double> x, double value) {
  if (x.size() != dims()) throw InvalidArgument("Dataset::append: dimension mismatch");
  const Eigen::Index n = X.rows();
  X.conservativeResize(n + 1, Eigen::NoChange);
  for (std::size_t k = 0; k < x.size(); ++k) X(n, static_cast<Eigen::Index>(k)) = x[k];
  y.conservativeResize(n + 1);
  y(n) = value;
}

std::vector<double> Dataset::point(std::size_t i) const {
  std::vector<double> p(dims());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
  return p;
}

void Dataset::check_unit_box() const {
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    for (Eigen::Index k = 0; k < X.cols(); ++k) {
      const double v = X(i, k);
      if (!(v >= 0.0 && v <= 1.0))
        throw InvalidArgument("Dataset: point " + std::to_string(i) + " outside the unit box");
    }
  }
}

}  // namespace spartan
