#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace spartan::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;

// Overrides the configured output directory; --out takes precedence.
inline constexpr const char* kOutDirEnv = "SPARTANBO_OUT_DIR";

struct RunOptions {
  std::string config;
  std::optional<std::size_t> jobs;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);
int cmd_plot(const std::string& dir, std::ostream& out, std::ostream& err);
int cmd_bench_list(std::ostream& out);

}  // namespace spartan::cli
