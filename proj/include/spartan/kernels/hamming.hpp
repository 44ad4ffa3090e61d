#pragma once

#include <span>

namespace spartan {

// exp(-theta * h / d), h the number of differing coordinates and d the arity.
// Categorical levels are carried as doubles holding small integers.
double hamming_kernel(std::span<const double> c, std::span<const double> c2, double theta);

}  // namespace spartan
