#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "spartan/strategies/config.hpp"

namespace spartan::cli {

struct ExperimentFile {
  std::string benchmark;
  std::vector<std::string> algorithms;
  std::size_t repetitions = 1;
  std::string output_dir = "results";
  std::uint64_t base_seed = 0;
  std::size_t jobs = 1;
  // Write measured wall time into trace files. Off by default so that
  // reruns produce identical bytes; timings always go to the summary.
  bool trace_wall_time = false;
  RunConfig run;
};

// Reads a YAML (block or flow style) or JSON experiment description, applies
// defaults and validates it. Unknown keys are rejected.
//   missing file          -> IoError
//   bad key / bad value   -> ConfigError, message carries the line number
ExperimentFile parse_experiment(const std::filesystem::path& path);
ExperimentFile parse_experiment_text(std::string_view text, std::string_view origin = "<config>");

}  // namespace spartan::cli
