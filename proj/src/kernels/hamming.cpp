#include "spartan/kernels/hamming.hpp"

#include <cmath>

#include "spartan/error.hpp"

namespace spartan {

double hamming_kernel(std::span<const double> c, std::span<const double> c2, double theta) {
  if (c.size() != c2.size() || c.empty())
    throw InvalidArgument("hamming_kernel: arity mismatch");
  if (!(theta > 0.0)) throw InvalidArgument("hamming_kernel: theta must be positive");
  std::size_t differing = 0;
  for (std::size_t k = 0; k < c.size(); ++k) differing += (c[k] != c2[k]) ? 1 : 0;
  return std::exp(-theta * static_cast<double>(differing) / static_cast<double>(c.size()));
}

}  // namespace spartan
