#include <CLI11.hpp>

#include <iostream>

#include "spartan/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace spartan::cli;
  CLI::App app{"spartanbo: Bayesian optimization experiments with a local/global GP kernel"};
  app.require_subcommand(1);

  RunOptions run;
  std::size_t jobs = 0;
  std::uint64_t seed = 0;
  std::string outdir;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment config");
  run_cmd->add_option("config", run.config, "Experiment file (YAML or JSON)")->required();
  auto* jobs_opt = run_cmd->add_option("--jobs,-j", jobs, "Parallel repetitions");
  auto* seed_opt = run_cmd->add_option("--seed,-s", seed, "Base seed (overrides the config)");
  auto* out_opt = run_cmd->add_option("--out,-o", outdir, "Output directory (overrides config and $SPARTANBO_OUT_DIR)");

  std::string plot_dir;
  auto* plot_cmd = app.add_subcommand("plot", "Write convergence SVGs and a final-gap table for a trace directory");
  plot_cmd->add_option("dir", plot_dir, "Directory with trace CSV files")->required();

  auto* list_cmd = app.add_subcommand("bench-list", "List available benchmarks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  if (*run_cmd) {
    if (*jobs_opt) run.jobs = jobs;
    if (*seed_opt) run.seed = seed;
    if (*out_opt) run.out = outdir;
    return cmd_run(run, std::cout, std::cerr);
  }
  if (*plot_cmd) return cmd_plot(plot_dir, std::cout, std::cerr);
  if (*list_cmd) return cmd_bench_list(std::cout);
  return kExitConfig;
}
