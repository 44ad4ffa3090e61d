#include "spartan/cli/commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <ostream>

#include "spartan/benchmarks/harness.hpp"
#include "spartan/benchmarks/registry.hpp"
#include "spartan/cli/experiment.hpp"
#include "spartan/cli/report.hpp"
#include "spartan/cli/trace_io.hpp"
#include "spartan/error.hpp"

namespace spartan::cli {

namespace fs = std::filesystem;

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  ExperimentFile ex;
  try {
    ex = parse_experiment(opts.config);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (opts.jobs) {
    if (*opts.jobs == 0) {
      err << "config error: --jobs must be >= 1\n";
      return kExitConfig;
    }
    ex.jobs = *opts.jobs;
  }
  if (opts.seed) ex.base_seed = *opts.seed;

  fs::path dir = ex.output_dir;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) dir = env;
  if (opts.out) dir = *opts.out;

  try {
    fs::create_directories(dir);
    const bench::Benchmark b = bench::make_benchmark(ex.benchmark);
    out << "running " << ex.algorithms.size() << " algorithm(s) x " << ex.repetitions << " repetition(s) on "
        << b.name << " -> " << dir.string() << '\n';
    const bench::ExperimentResult result =
        bench::run_experiment(b, ex.algorithms, ex.repetitions, ex.run, ex.base_seed, ex.jobs);

    for (const auto& r : result.runs) {
      if (!r.ok) {
        err << "run failed: " << r.algorithm << " repetition " << r.repetition << ": " << r.error << '\n';
        continue;
      }
      if (r.trace.sampler_warnings > 0)
        err << "warning: " << r.algorithm << " repetition " << r.repetition << ": sampler fell back to prior draws "
            << r.trace.sampler_warnings << " time(s)\n";
      write_trace_file(dir / trace_file_name(b.name, r.algorithm, r.repetition), r.trace);
    }
    write_summary_json(dir / (b.name + "_summary.json"), result, ex.base_seed);

    for (const auto& a : result.summary.algorithms) {
      if (a.final_gaps.empty()) continue;
      out << a.algorithm << ": median final gap " << bench::quantile(a.final_gaps, 0.5) << ", total "
          << a.total_seconds << " s\n";
    }
    if (result.warnings > 0) {
      err << result.warnings << " repetition(s) failed\n";
      return kExitRuntime;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_plot(const std::string& dir, std::ostream& out, std::ostream& err) {
  try {
    const PlotOutput p = plot_directory(dir);
    for (const auto& s : p.svgs) out << "wrote " << s.string() << '\n';
    out << "wrote " << p.table.string() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_bench_list(std::ostream& out) {
  for (const auto& name : bench::benchmark_names()) {
    const bench::Benchmark b = bench::make_benchmark(name);
    out << name << "\tdims=" << b.space.continuous_dims();
    if (!b.space.categorical.empty()) out << "+" << b.space.categorical_dims() << "cat";
    if (b.known_minimum) out << "\tf*=" << *b.known_minimum;
    out << '\t' << b.description << '\n';
  }
  return kExitOk;
}

}  // namespace spartan::cli
