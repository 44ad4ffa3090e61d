#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "spartan/benchmarks/harness.hpp"

namespace spartan::cli {

std::string summary_json(const bench::ExperimentResult& result, std::uint64_t base_seed);
void write_summary_json(const std::filesystem::path& path, const bench::ExperimentResult& result,
                        std::uint64_t base_seed);

struct PlotOutput {
  std::vector<std::filesystem::path> svgs;
  std::filesystem::path table;
};

// Reads every *.csv trace under dir, groups by benchmark (taken from the
// file name) and writes <benchmark>_convergence.svg plus final_gaps.txt.
PlotOutput plot_directory(const std::filesystem::path& dir);

// Exposed for tests: SVG for one benchmark given per-algorithm summaries.
std::string convergence_svg(const bench::Summary& summary);

}  // namespace spartan::cli
