#include "spartan/cli/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <limits>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "spartan/benchmarks/registry.hpp"
#include "spartan/cli/trace_io.hpp"
#include "spartan/error.hpp"

namespace spartan::cli {

namespace {

constexpr double kGapFloor = 1e-8;

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string exact(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::string summary_json(const bench::ExperimentResult& result, std::uint64_t base_seed) {
  nlohmann::ordered_json j;
  j["benchmark"] = result.summary.benchmark;
  j["f_star"] = result.summary.f_star;
  j["n_init"] = result.summary.n_init;
  j["base_seed"] = base_seed;
  j["failed_runs"] = result.warnings;
  nlohmann::ordered_json algs = nlohmann::ordered_json::array();
  for (const auto& a : result.summary.algorithms) {
    nlohmann::ordered_json e;
    e["algorithm"] = a.algorithm;
    e["median_gap"] = a.median_gap;
    e["q25_gap"] = a.q25_gap;
    e["q75_gap"] = a.q75_gap;
    e["final_gaps"] = a.final_gaps;
    e["run_seconds"] = a.run_seconds;
    e["total_seconds"] = a.total_seconds;
    e["failures"] = a.failures;
    algs.push_back(std::move(e));
  }
  j["algorithms"] = std::move(algs);
  nlohmann::ordered_json errors = nlohmann::ordered_json::array();
  for (const auto& r : result.runs) {
    if (r.ok) continue;
    errors.push_back({{"algorithm", r.algorithm}, {"repetition", r.repetition}, {"error", r.error}});
  }
  j["errors"] = std::move(errors);
  return j.dump(2) + "\n";
}

void write_summary_json(const std::filesystem::path& path, const bench::ExperimentResult& result,
                        std::uint64_t base_seed) {
  write_text(path, summary_json(result, base_seed));
}

std::string convergence_svg(const bench::Summary& summary) {
  constexpr double W = 720, H = 440, L = 70, R = 150, T = 40, B = 50;
  const double pw = W - L - R, ph = H - T - B;

  std::size_t len = 0;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  auto lg = [](double g) { return std::log10(std::max(g, kGapFloor)); };
  for (const auto& a : summary.algorithms) {
    len = std::max(len, a.median_gap.size());
    for (std::size_t i = 0; i < a.median_gap.size(); ++i) {
      for (double g : {a.q25_gap[i], a.median_gap[i], a.q75_gap[i]}) {
        lo = std::min(lo, lg(g));
        hi = std::max(hi, lg(g));
      }
    }
  }
  if (len == 0 || !std::isfinite(lo)) {
    lo = -8;
    hi = 0;
  }
  lo = std::floor(lo);
  hi = std::ceil(hi);
  if (hi <= lo) hi = lo + 1;

  // x axis: iterations after the initial design; init records plot at 0.
  const double n0 = static_cast<double>(summary.n_init);
  const double xmax = std::max(1.0, static_cast<double>(len) - n0);
  auto px = [&](std::size_t idx) {
    const double it = std::max(0.0, static_cast<double>(idx + 1) - n0);
    return L + pw * it / xmax;
  };
  auto py = [&](double g) { return T + ph * (hi - lg(g)) / (hi - lo); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << L + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << summary.benchmark
    << ": median optimality gap</text>\n";
  s << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double e = lo; e <= hi + 1e-9; e += 1.0) {
    const double y = T + ph * (hi - e) / (hi - lo);
    s << "<line x1=\"" << L << "\" y1=\"" << y << "\" x2=\"" << L + pw << "\" y2=\"" << y
      << "\" stroke=\"#ddd\"/>\n";
    s << "<text x=\"" << L - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << static_cast<int>(e)
      << "</text>\n";
  }
  const int ticks = 5;
  for (int t = 0; t <= ticks; ++t) {
    const double it = xmax * t / ticks;
    const double x = L + pw * it / xmax;
    s << "<text x=\"" << x << "\" y=\"" << T + ph + 18 << "\" text-anchor=\"middle\">" << num(std::round(it))
      << "</text>\n";
  }
  s << "<text x=\"" << L + pw / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">iteration after initial design</text>\n";
  s << "<text transform=\"translate(16," << T + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">gap (log10)</text>\n";

  for (std::size_t k = 0; k < summary.algorithms.size(); ++k) {
    const auto& a = summary.algorithms[k];
    const char* color = kPalette[k % std::size(kPalette)];
    if (a.median_gap.empty()) continue;
    s << "<polygon fill=\"" << color << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < a.q75_gap.size(); ++i) s << px(i) << ',' << py(a.q75_gap[i]) << ' ';
    for (std::size_t i = a.q25_gap.size(); i-- > 0;) s << px(i) << ',' << py(a.q25_gap[i]) << ' ';
    s << "\"/>\n";
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < a.median_gap.size(); ++i) s << px(i) << ',' << py(a.median_gap[i]) << ' ';
    s << "\"/>\n";
    const double ly = T + 16 + 18 * static_cast<double>(k);
    s << "<line x1=\"" << L + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << L + pw + 32 << "\" y2=\"" << ly
      << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << L + pw + 38 << "\" y=\"" << ly + 4 << "\">" << a.algorithm << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

PlotOutput plot_directory(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw IoError("not a directory: '" + dir.string() + "'");

  // benchmark -> algorithm -> traces (ordered by file name for stable output)
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw IoError("no trace files (*.csv) in '" + dir.string() + "'");

  std::map<std::string, std::map<std::string, std::vector<Trace>>> groups;
  for (const auto& f : files) {
    const std::string stem = f.stem().string();
    const auto sep = stem.find("__");
    if (sep == std::string::npos) throw ParseError(f.string() + ": file name is not <benchmark>__<algorithm>__r<k>.csv");
    Trace t = read_trace_file(f);
    groups[stem.substr(0, sep)][t.algorithm].push_back(std::move(t));
  }

  PlotOutput out;
  std::ostringstream table;
  table << "benchmark\talgorithm\trepetitions\tmedian_final_gap\tfinal_gaps\n";
  for (const auto& [bname, algs] : groups) {
    const bench::Benchmark b = bench::make_benchmark(bname);
    bench::Summary summary;
    summary.benchmark = bname;
    summary.f_star = b.known_minimum.value_or(0.0);
    summary.n_init = 0;
    for (const auto& [aname, traces] : algs) {
      std::vector<const Trace*> ptrs;
      for (const auto& t : traces) ptrs.push_back(&t);
      summary.algorithms.push_back(bench::summarize(aname, ptrs, summary.f_star));
      std::size_t n_init = 0;
      for (const auto& r : traces.front().records) n_init += r.phase == Phase::Init ? 1 : 0;
      summary.n_init = std::max(summary.n_init, n_init);
      const auto& s = summary.algorithms.back();
      table << bname << '\t' << aname << '\t' << traces.size() << '\t' << exact(bench::quantile(s.final_gaps, 0.5)) << '\t';
      for (std::size_t i = 0; i < s.final_gaps.size(); ++i) table << (i ? "," : "") << exact(s.final_gaps[i]);
      table << '\n';
    }
    const fs::path svg = dir / (bname + "_convergence.svg");
    write_text(svg, convergence_svg(summary));
    out.svgs.push_back(svg);
  }
  out.table = dir / "final_gaps.txt";
  write_text(out.table, table.str());
  return out;
}

}  // namespace spartan::cli
