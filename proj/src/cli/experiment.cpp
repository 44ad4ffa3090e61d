#include "spartan/cli/experiment.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "spartan/benchmarks/harness.hpp"
#include "spartan/benchmarks/registry.hpp"
#include "spartan/error.hpp"

namespace spartan::cli {

namespace {

class Reader {
 public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(const YAML::Node& n, const std::string& msg) const {
    const auto mark = n.Mark();
    std::string where = origin_;
    if (!mark.is_null()) where += ":" + std::to_string(mark.line + 1);
    throw ConfigError(where + ": " + msg);
  }

  [[noreturn]] void fail_at_line(int line, const std::string& msg) const {
    throw ConfigError(origin_ + ":" + std::to_string(line + 1) + ": " + msg);
  }

  void only_keys(const YAML::Node& map, const std::string& section, std::initializer_list<const char*> keys) const {
    if (!map.IsMap()) fail(map, (section.empty() ? "top level" : section) + " must be a mapping");
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& kv : map) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.contains(key)) {
        std::string valid;
        for (const auto& k : allowed) valid += (valid.empty() ? "" : ", ") + k;
        fail(kv.first, "unknown key '" + (section.empty() ? key : section + "." + key) + "' (valid: " + valid + ")");
      }
    }
  }

  template <class T>
  T scalar(const YAML::Node& n, const std::string& key) const {
    if (!n.IsScalar()) fail(n, "'" + key + "' must be a scalar");
    try {
      return n.as<T>();
    } catch (const YAML::BadConversion&) {
      fail(n, "invalid value '" + n.Scalar() + "' for '" + key + "'");
    }
  }

  std::size_t count(const YAML::Node& n, const std::string& key, std::size_t min_value) const {
    const auto v = scalar<long long>(n, key);
    if (v < static_cast<long long>(min_value))
      fail(n, "'" + key + "' must be >= " + std::to_string(min_value) + ", got " + std::to_string(v));
    return static_cast<std::size_t>(v);
  }

  double positive(const YAML::Node& n, const std::string& key) const {
    const auto v = scalar<double>(n, key);
    if (!(v > 0.0)) fail(n, "'" + key + "' must be positive");
    return v;
  }

  double nonnegative(const YAML::Node& n, const std::string& key) const {
    const auto v = scalar<double>(n, key);
    if (!(v >= 0.0)) fail(n, "'" + key + "' must be nonnegative");
    return v;
  }

 private:
  std::string origin_;
};

void read_log_normal(const Reader& rd, const YAML::Node& n, const std::string& key, LogNormalPrior& p) {
  rd.only_keys(n, key, {"median", "log_sd"});
  if (n["median"]) p.median = rd.positive(n["median"], key + ".median");
  if (n["log_sd"]) p.log_sd = rd.positive(n["log_sd"], key + ".log_sd");
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return out;
}

}  // namespace

ExperimentFile parse_experiment_text(std::string_view text, std::string_view origin) {
  const Reader rd{std::string(origin)};
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    rd.fail_at_line(e.mark.line, "syntax error: " + e.msg);
  }
  if (!root || root.IsNull()) throw ConfigError(std::string(origin) + ": empty experiment file");

  rd.only_keys(root, "",
               {"benchmark", "algorithms", "repetitions", "output_dir", "base_seed", "jobs", "trace_wall_time",
                "n_init", "n_iter", "mcmc_samples", "burn_in", "kernel", "noise_variance", "learn_noise",
                "fixed_pos", "acquisition", "spbo", "hbo", "weights", "priors"});

  ExperimentFile ex;
  RunConfig& run = ex.run;

  if (!root["benchmark"]) rd.fail(root, "missing required key 'benchmark'");
  ex.benchmark = rd.scalar<std::string>(root["benchmark"], "benchmark");
  const auto& names = bench::benchmark_names();
  if (std::find(names.begin(), names.end(), ex.benchmark) == names.end())
    rd.fail(root["benchmark"], "unknown benchmark '" + ex.benchmark + "' (valid: " + join(names) + ")");

  if (!root["algorithms"]) rd.fail(root, "missing required key 'algorithms'");
  const YAML::Node algs = root["algorithms"];
  if (algs.IsScalar()) {
    ex.algorithms.push_back(algs.as<std::string>());
  } else if (algs.IsSequence()) {
    for (const auto& a : algs) ex.algorithms.push_back(rd.scalar<std::string>(a, "algorithms"));
  } else {
    rd.fail(algs, "'algorithms' must be a name or a list of names");
  }
  if (ex.algorithms.empty()) rd.fail(algs, "'algorithms' is empty");
  for (const auto& a : ex.algorithms) {
    if (!bench::is_algorithm(a))
      rd.fail(algs, "unknown algorithm '" + a + "' (valid: " + join(bench::algorithm_names()) + ")");
  }

  if (root["repetitions"]) ex.repetitions = rd.count(root["repetitions"], "repetitions", 1);
  if (root["output_dir"]) ex.output_dir = rd.scalar<std::string>(root["output_dir"], "output_dir");
  if (root["base_seed"]) ex.base_seed = static_cast<std::uint64_t>(rd.count(root["base_seed"], "base_seed", 0));
  if (root["jobs"]) ex.jobs = rd.count(root["jobs"], "jobs", 1);
  if (root["trace_wall_time"]) ex.trace_wall_time = rd.scalar<bool>(root["trace_wall_time"], "trace_wall_time");

  if (root["n_init"]) run.n_init = rd.count(root["n_init"], "n_init", 1);
  if (root["n_iter"]) run.n_iter = rd.count(root["n_iter"], "n_iter", 1);
  if (root["mcmc_samples"]) run.mcmc_samples = rd.count(root["mcmc_samples"], "mcmc_samples", 1);
  if (root["burn_in"]) run.burn_in = rd.count(root["burn_in"], "burn_in", 0);
  if (root["kernel"]) {
    const auto k = rd.scalar<std::string>(root["kernel"], "kernel");
    const auto parsed = parse_surrogate_kernel(k);
    if (!parsed) rd.fail(root["kernel"], "unknown kernel '" + k + "' (valid: matern52-ard, se-ard, spartan)");
    run.kernel = *parsed;
  }
  if (root["noise_variance"]) run.noise_variance = rd.nonnegative(root["noise_variance"], "noise_variance");
  if (root["learn_noise"]) run.learn_noise = rd.scalar<bool>(root["learn_noise"], "learn_noise");
  if (root["fixed_pos"]) {
    const YAML::Node fp = root["fixed_pos"];
    if (!fp.IsSequence()) rd.fail(fp, "'fixed_pos' must be a list");
    std::vector<double> pos;
    for (const auto& v : fp) {
      const double p = rd.scalar<double>(v, "fixed_pos");
      if (!(p > 0.0 && p < 1.0)) rd.fail(v, "'fixed_pos' entries must be in (0,1)");
      pos.push_back(p);
    }
    run.fixed_pos = pos;
  }

  if (const YAML::Node a = root["acquisition"]) {
    rd.only_keys(a, "acquisition", {"alpha", "ig_mode", "candidates", "refine_evaluations", "initial_step"});
    if (a["alpha"]) run.acquisition.alpha = rd.nonnegative(a["alpha"], "acquisition.alpha");
    if (a["ig_mode"]) {
      const auto m = rd.scalar<std::string>(a["ig_mode"], "acquisition.ig_mode");
      if (m == "entropy")
        run.acquisition.ig_mode = InfoGainMode::Entropy;
      else if (m == "verbatim")
        run.acquisition.ig_mode = InfoGainMode::Verbatim;
      else
        rd.fail(a["ig_mode"], "unknown ig_mode '" + m + "' (valid: entropy, verbatim)");
    }
    if (a["candidates"]) run.candidates = rd.count(a["candidates"], "acquisition.candidates", 1);
    if (a["refine_evaluations"])
      run.refine_evaluations = rd.count(a["refine_evaluations"], "acquisition.refine_evaluations", 0);
    if (a["initial_step"]) run.acquisition.budget.initial_step = rd.positive(a["initial_step"], "acquisition.initial_step");
  }

  if (const YAML::Node s = root["spbo"]) {
    rd.only_keys(s, "spbo", {"c", "gamma", "T"});
    if (s["c"]) run.spbo.c = rd.positive(s["c"], "spbo.c");
    if (s["gamma"]) {
      run.spbo.gamma = rd.positive(s["gamma"], "spbo.gamma");
      if (run.spbo.gamma > 1.0) rd.fail(s["gamma"], "'spbo.gamma' must be in (0,1]");
    }
    if (s["T"]) run.spbo.T = rd.count(s["T"], "spbo.T", 0);
  }

  if (const YAML::Node h = root["hbo"]) {
    rd.only_keys(h, "hbo", {"outer", "inner", "reevaluate", "outer_kernel"});
    if (h["outer"]) run.hbo.outer = rd.count(h["outer"], "hbo.outer", 1);
    if (h["inner"]) run.hbo.inner = rd.count(h["inner"], "hbo.inner", 1);
    if (h["reevaluate"]) run.hbo.reevaluate = rd.scalar<bool>(h["reevaluate"], "hbo.reevaluate");
    if (h["outer_kernel"]) {
      const auto k = rd.scalar<std::string>(h["outer_kernel"], "hbo.outer_kernel");
      const auto parsed = parse_surrogate_kernel(k);
      if (!parsed) rd.fail(h["outer_kernel"], "unknown kernel '" + k + "'");
      run.hbo.outer_kernel = *parsed;
    }
  }

  if (const YAML::Node w = root["weights"]) {
    rd.only_keys(w, "weights", {"global_mean", "global_variance", "local_variance"});
    if (w["global_mean"]) run.weights.global_mean = rd.scalar<double>(w["global_mean"], "weights.global_mean");
    if (w["global_variance"]) run.weights.global_variance = rd.positive(w["global_variance"], "weights.global_variance");
    if (w["local_variance"]) run.weights.local_variance = rd.positive(w["local_variance"], "weights.local_variance");
  }

  if (const YAML::Node p = root["priors"]) {
    rd.only_keys(p, "priors", {"lengthscale", "signal_variance", "noise", "hamming_theta"});
    if (p["lengthscale"]) read_log_normal(rd, p["lengthscale"], "priors.lengthscale", run.priors.lengthscale);
    if (p["signal_variance"])
      read_log_normal(rd, p["signal_variance"], "priors.signal_variance", run.priors.signal_variance);
    if (p["noise"]) read_log_normal(rd, p["noise"], "priors.noise", run.priors.noise);
    if (p["hamming_theta"]) read_log_normal(rd, p["hamming_theta"], "priors.hamming_theta", run.priors.hamming_theta);
  }

  // Cross-field checks against the benchmark's space.
  const bench::Benchmark b = bench::make_benchmark(ex.benchmark);
  const bool mixed = !b.space.categorical.empty();
  for (const auto& a : ex.algorithms) {
    if (mixed && a != "hbo")
      rd.fail(algs, "algorithm '" + a + "' does not support categorical variables; use hbo on '" + ex.benchmark + "'");
    if (!mixed && a == "hbo") rd.fail(algs, "hbo needs a benchmark with categorical variables");
  }
  if (run.fixed_pos && run.fixed_pos->size() != b.space.continuous_dims())
    rd.fail(root["fixed_pos"], "'fixed_pos' must have one entry per continuous dimension");

  run.record_wall_time = ex.trace_wall_time;
  try {
    run.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string(origin) + ": " + e.what());
  }
  return ex;
}

ExperimentFile parse_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open experiment file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment_text(ss.str(), path.string());
}

}  // namespace spartan::cli
