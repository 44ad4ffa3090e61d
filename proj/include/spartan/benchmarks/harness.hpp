#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "spartan/benchmarks/registry.hpp"
#include "spartan/strategies/loops.hpp"

namespace spartan::bench {

// gap_n = best_y(n) - f_star. Throws InconsistentGroundTruth if any gap is
// below -1e-9.
std::vector<double> optimality_gap(const Trace& trace, double f_star);

// "bo", "sbo", "spbo", "bo-eiig", "sbo-eiig", "hbo"
const std::vector<std::string>& algorithm_names();
bool is_algorithm(std::string_view name);

// Runs one named algorithm; the trace is labelled with that name.
Trace run_algorithm(std::string_view algorithm, const Benchmark& b, const RunConfig& cfg);

// Linear-interpolation quantile of an unsorted sample.
double quantile(std::vector<double> values, double q);

struct AlgorithmSummary {
  std::string algorithm;
  // Per evaluation index across successful repetitions.
  std::vector<double> median_gap;
  std::vector<double> q25_gap;
  std::vector<double> q75_gap;
  std::vector<double> final_gaps;   // one per successful repetition
  std::vector<double> run_seconds;  // one per successful repetition
  double total_seconds = 0.0;
  std::size_t failures = 0;
};

struct Summary {
  std::string benchmark;
  double f_star = 0.0;
  std::size_t n_init = 0;
  std::vector<AlgorithmSummary> algorithms;
};

struct RunOutcome {
  std::string algorithm;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  Trace trace;
  double seconds = 0.0;
};

struct ExperimentResult {
  Summary summary;
  std::vector<RunOutcome> runs;  // algorithm-major, then repetition
  std::size_t warnings = 0;      // failed runs
};

// Repetition r uses seed base_seed + r for every algorithm (common random
// numbers). Repetitions may run on up to `jobs` threads; results do not
// depend on `jobs`.
ExperimentResult run_experiment(const Benchmark& b, const std::vector<std::string>& algorithms,
                                std::size_t repetitions, const RunConfig& cfg, std::uint64_t base_seed,
                                std::size_t jobs = 1);

// Aggregates traces of one algorithm. All traces must have equal length.
AlgorithmSummary summarize(std::string algorithm, const std::vector<const Trace*>& traces, double f_star);

}  // namespace spartan::bench
