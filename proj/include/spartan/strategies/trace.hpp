#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spartan/strategies/space.hpp"

namespace spartan {

enum class Phase { Init, Bo, Perturbation, HboInner, HboOuter };

std::string_view to_string(Phase phase);
std::optional<Phase> parse_phase(std::string_view s);

struct TraceRecord {
  std::size_t iteration = 0;  // 1-based evaluation count
  Phase phase = Phase::Init;
  std::vector<double> x;      // raw continuous coordinates
  std::vector<int> cat;       // categorical levels
  double y = 0.0;
  double best_y = 0.0;        // running minimum of y
  double wall_ms = 0.0;       // cumulative since run start

  bool operator==(const TraceRecord&) const = default;
};

struct Trace {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::vector<TraceRecord> records;
  std::size_t sampler_warnings = 0;   // iterations whose ensemble fell back to prior draws
  std::size_t penalized = 0;          // non-finite objective values replaced by the worst seen

  double best_y() const;
  // Record with the lowest y (first on ties).
  const TraceRecord& best_record() const;

  bool operator==(const Trace&) const = default;
};

// Throws InvalidArgument if a record lies outside the space, best_y is not
// the running minimum, iterations are not 1..n, or wall time decreases.
void validate_trace(const Trace& trace, const SearchSpace& space);

}  // namespace spartan
