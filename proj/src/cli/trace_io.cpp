#include "spartan/cli/trace_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "spartan/error.hpp"

namespace spartan::cli {

namespace {

std::string fmt(double v) {
  std::array<char, 32> buf{};
  const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), r.ptr);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

template <class T>
T parse_field(const std::string& s, const std::string& source, std::size_t line, const char* what) {
  T v{};
  const char* end = s.data() + s.size();
  const auto r = std::from_chars(s.data(), end, v);
  if (r.ec != std::errc{} || r.ptr != end || s.empty())
    throw ParseError(source + ":" + std::to_string(line) + ": bad " + what + " '" + s + "'");
  return v;
}

}  // namespace

void write_trace(std::ostream& out, const Trace& trace) {
  const std::size_t d = trace.records.empty() ? 0 : trace.records.front().x.size();
  const std::size_t k = trace.records.empty() ? 0 : trace.records.front().cat.size();
  out << "iteration,phase,algorithm,seed";
  for (std::size_t j = 0; j < d; ++j) out << ",x" << j + 1;
  for (std::size_t j = 0; j < k; ++j) out << ",c" << j + 1;
  out << ",y,best_y,wall_ms\n";
  for (const auto& r : trace.records) {
    if (r.x.size() != d || r.cat.size() != k) throw InvalidArgument("write_trace: ragged records");
    out << r.iteration << ',' << to_string(r.phase) << ',' << trace.algorithm << ',' << trace.seed;
    for (double v : r.x) out << ',' << fmt(v);
    for (int c : r.cat) out << ',' << c;
    out << ',' << fmt(r.y) << ',' << fmt(r.best_y) << ',' << fmt(r.wall_ms) << '\n';
  }
}

void write_trace_file(const std::filesystem::path& path, const Trace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  write_trace(out, trace);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

Trace read_trace(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source + ": empty trace file");
  const auto header = split(line);
  std::size_t d = 0, k = 0;
  for (const auto& h : header) {
    if (h.size() > 1 && h[0] == 'x') ++d;
    if (h.size() > 1 && h[0] == 'c') ++k;
  }
  if (header.size() != 7 + d + k || header[0] != "iteration" || header[1] != "phase" ||
      header[2] != "algorithm" || header[3] != "seed" || header[header.size() - 3] != "y" ||
      header[header.size() - 2] != "best_y" || header.back() != "wall_ms")
    throw ParseError(source + ":1: unrecognized header");

  Trace t;
  std::size_t lineno = 1;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != header.size())
      throw ParseError(source + ":" + std::to_string(lineno) + ": expected " + std::to_string(header.size()) +
                       " fields, got " + std::to_string(f.size()));
    TraceRecord r;
    r.iteration = parse_field<std::size_t>(f[0], source, lineno, "iteration");
    const auto phase = parse_phase(f[1]);
    if (!phase) throw ParseError(source + ":" + std::to_string(lineno) + ": bad phase '" + f[1] + "'");
    r.phase = *phase;
    const auto seed = parse_field<std::uint64_t>(f[3], source, lineno, "seed");
    if (first) {
      t.algorithm = f[2];
      t.seed = seed;
      first = false;
    } else if (f[2] != t.algorithm || seed != t.seed) {
      throw ParseError(source + ":" + std::to_string(lineno) + ": algorithm/seed differ from earlier rows");
    }
    std::size_t i = 4;
    for (std::size_t j = 0; j < d; ++j) r.x.push_back(parse_field<double>(f[i++], source, lineno, "coordinate"));
    for (std::size_t j = 0; j < k; ++j) r.cat.push_back(parse_field<int>(f[i++], source, lineno, "category"));
    r.y = parse_field<double>(f[i++], source, lineno, "y");
    r.best_y = parse_field<double>(f[i++], source, lineno, "best_y");
    r.wall_ms = parse_field<double>(f[i++], source, lineno, "wall_ms");
    t.records.push_back(std::move(r));
  }
  return t;
}

Trace read_trace_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open trace '" + path.string() + "'");
  return read_trace(in, path.string());
}

std::string trace_file_name(const std::string& benchmark, const std::string& algorithm, std::size_t repetition) {
  return benchmark + "__" + algorithm + "__r" + std::to_string(repetition) + ".csv";
}

}  // namespace spartan::cli
