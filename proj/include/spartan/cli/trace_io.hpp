#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "spartan/strategies/trace.hpp"

namespace spartan::cli {

// CSV with header iteration,phase,algorithm,seed,x1..xd,c1..ck,y,best_y,wall_ms.
// Doubles are written in shortest round-trip form, so write/read is exact.
void write_trace(std::ostream& out, const Trace& trace);
void write_trace_file(const std::filesystem::path& path, const Trace& trace);

// Throws ParseError naming the source and line on malformed input.
Trace read_trace(std::istream& in, const std::string& source = "<stream>");
Trace read_trace_file(const std::filesystem::path& path);

std::string trace_file_name(const std::string& benchmark, const std::string& algorithm, std::size_t repetition);

}  // namespace spartan::cli
