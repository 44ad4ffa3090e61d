#include "spartan/benchmarks/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "spartan/error.hpp"

namespace spartan::bench {

namespace {

constexpr double kGapTolerance = 1e-9;

}  // namespace

std::vector<double> optimality_gap(const Trace& trace, double f_star) {
  if (!std::isfinite(f_star)) throw InvalidArgument("optimality_gap: f_star not finite");
  std::vector<double> gaps;
  gaps.reserve(trace.records.size());
  for (const auto& r : trace.records) {
    const double g = r.best_y - f_star;
    if (g < -kGapTolerance)
      throw InconsistentGroundTruth("optimality_gap: observed " + std::to_string(r.best_y) +
                                    " below the known minimum " + std::to_string(f_star));
    gaps.push_back(g);
  }
  return gaps;
}

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {"bo", "sbo", "spbo", "bo-eiig", "sbo-eiig", "hbo"};
  return names;
}

bool is_algorithm(std::string_view name) {
  const auto& n = algorithm_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

Trace run_algorithm(std::string_view algorithm, const Benchmark& b, const RunConfig& cfg) {
  RunConfig c = cfg;
  Trace t;
  if (algorithm == "bo" || algorithm == "bo-eiig") {
    c.acquisition.kind = algorithm == "bo" ? AcquisitionKind::EI : AcquisitionKind::EIIG;
    if (c.kernel == SurrogateKernel::Spartan) c.kernel = SurrogateKernel::Matern52Ard;
    t = run_bo(b.evaluator, b.space, c);
  } else if (algorithm == "sbo" || algorithm == "sbo-eiig") {
    c.acquisition.kind = algorithm == "sbo" ? AcquisitionKind::EI : AcquisitionKind::EIIG;
    t = run_sbo(b.evaluator, b.space, c);
  } else if (algorithm == "spbo") {
    c.acquisition.kind = AcquisitionKind::EI;
    if (c.kernel == SurrogateKernel::Spartan) c.kernel = SurrogateKernel::Matern52Ard;
    t = run_spbo(b.evaluator, b.space, c);
  } else if (algorithm == "hbo") {
    t = run_hbo(b.evaluator, b.space, c);
  } else {
    throw InvalidArgument("unknown algorithm '" + std::string(algorithm) + "'");
  }
  t.algorithm = std::string(algorithm);
  return t;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidArgument("quantile: empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

AlgorithmSummary summarize(std::string algorithm, const std::vector<const Trace*>& traces, double f_star) {
  AlgorithmSummary s;
  s.algorithm = std::move(algorithm);
  if (traces.empty()) return s;
  std::vector<std::vector<double>> gaps;
  for (const Trace* t : traces) gaps.push_back(optimality_gap(*t, f_star));
  const std::size_t len = gaps.front().size();
  for (const auto& g : gaps) {
    if (g.size() != len) throw InvalidArgument("summarize: traces of unequal length");
  }
  std::vector<double> column(gaps.size());
  for (std::size_t n = 0; n < len; ++n) {
    for (std::size_t r = 0; r < gaps.size(); ++r) column[r] = gaps[r][n];
    s.median_gap.push_back(quantile(column, 0.5));
    s.q25_gap.push_back(quantile(column, 0.25));
    s.q75_gap.push_back(quantile(column, 0.75));
  }
  for (const auto& g : gaps) s.final_gaps.push_back(g.empty() ? 0.0 : g.back());
  return s;
}

ExperimentResult run_experiment(const Benchmark& b, const std::vector<std::string>& algorithms,
                                std::size_t repetitions, const RunConfig& cfg, std::uint64_t base_seed,
                                std::size_t jobs) {
  if (repetitions < 1) throw InvalidArgument("run_experiment: repetitions must be >= 1");
  if (!b.known_minimum) throw InvalidArgument("run_experiment: benchmark has no known minimum");
  for (const auto& a : algorithms) {
    if (!is_algorithm(a)) throw InvalidArgument("run_experiment: unknown algorithm '" + a + "'");
  }

  ExperimentResult result;
  for (const auto& a : algorithms) {
    for (std::size_t r = 0; r < repetitions; ++r) {
      RunOutcome o;
      o.algorithm = a;
      o.repetition = r;
      o.seed = base_seed + r;
      result.runs.push_back(std::move(o));
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < result.runs.size(); i = next.fetch_add(1)) {
      RunOutcome& o = result.runs[i];
      RunConfig c = cfg;
      c.seed = o.seed;
      const auto start = std::chrono::steady_clock::now();
      try {
        o.trace = run_algorithm(o.algorithm, b, c);
        o.ok = true;
      } catch (const std::exception& e) {
        o.error = e.what();
      }
      o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(jobs, 1, result.runs.size());
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  result.summary.benchmark = b.name;
  result.summary.f_star = *b.known_minimum;
  result.summary.n_init = cfg.n_init;
  for (const auto& a : algorithms) {
    std::vector<const Trace*> ok;
    std::vector<double> secs;
    std::size_t failures = 0;
    for (const auto& o : result.runs) {
      if (o.algorithm != a) continue;
      if (o.ok) {
        ok.push_back(&o.trace);
        secs.push_back(o.seconds);
      } else {
        ++failures;
      }
    }
    AlgorithmSummary s = summarize(a, ok, *b.known_minimum);
    s.run_seconds = secs;
    for (double v : secs) s.total_seconds += v;
    s.failures = failures;
    result.warnings += failures;
    result.summary.algorithms.push_back(std::move(s));
  }
  return result;
}

}  // namespace spartan::bench
