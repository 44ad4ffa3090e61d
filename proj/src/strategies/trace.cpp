#include "spartan/strategies/trace.hpp"

#include <algorithm>
#include <limits>

#include "spartan/error.hpp"

namespace spartan {

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Init:
      return "init";
    case Phase::Bo:
      return "bo";
    case Phase::Perturbation:
      return "perturbation";
    case Phase::HboInner:
      return "hbo-inner";
    case Phase::HboOuter:
      return "hbo-outer";
  }
  return "unknown";
}

std::optional<Phase> parse_phase(std::string_view s) {
  for (Phase p : {Phase::Init, Phase::Bo, Phase::Perturbation, Phase::HboInner, Phase::HboOuter}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

double Trace::best_y() const { return records.empty() ? std::numeric_limits<double>::infinity() : records.back().best_y; }

const TraceRecord& Trace::best_record() const {
  if (records.empty()) throw InvalidArgument("Trace: no records");
  return *std::min_element(records.begin(), records.end(),
                           [](const TraceRecord& a, const TraceRecord& b) { return a.y < b.y; });
}

void validate_trace(const Trace& trace, const SearchSpace& space) {
  double running = std::numeric_limits<double>::infinity();
  double last_wall = 0.0;
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const auto& r = trace.records[i];
    const std::string where = "trace record " + std::to_string(i + 1) + ": ";
    if (r.iteration != i + 1) throw InvalidArgument(where + "iteration out of sequence");
    if (!space.contains(r.x, r.cat)) throw InvalidArgument(where + "point outside the search space");
    running = std::min(running, r.y);
    if (r.best_y != running) throw InvalidArgument(where + "best_y is not the running minimum");
    if (r.wall_ms < last_wall) throw InvalidArgument(where + "wall time decreased");
    last_wall = r.wall_ms;
  }
}

}  // namespace spartan
