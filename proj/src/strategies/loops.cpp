#include "spartan/strategies/loops.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "spartan/acquisition/maximize.hpp"
#include "spartan/error.hpp"

namespace spartan {

namespace {

// Random streams of one run; the initial design has its own so that it does
// not depend on the algorithm.
constexpr std::uint64_t kInitStream = 0;
constexpr std::uint64_t kModelStream = 1;
constexpr std::uint64_t kPerturbStream = 2;
constexpr std::uint64_t kInnerStream = 3;

// Categorical spaces up to this size are scored exhaustively by the inner
// Hamming-kernel BO; larger ones through a random subset.
constexpr std::size_t kInnerEnumerationLimit = 4096;
constexpr std::size_t kInnerRandomCandidates = 1024;

class Recorder {
 public:
  Recorder(const Objective& f, const SearchSpace& space, Trace& trace, bool timed)
      : f_(f), space_(space), trace_(trace), timed_(timed), start_(std::chrono::steady_clock::now()) {}

  double evaluate(std::vector<double> raw, std::vector<int> cat, Phase phase) {
    double y = f_(raw, cat);
    if (!std::isfinite(y)) {
      y = std::isfinite(worst_) ? worst_ : 0.0;
      ++trace_.penalized;
    }
    worst_ = std::isfinite(worst_) ? std::max(worst_, y) : y;
    best_ = std::min(best_, y);
    TraceRecord r;
    r.iteration = trace_.records.size() + 1;
    r.phase = phase;
    r.x = std::move(raw);
    r.cat = std::move(cat);
    r.y = y;
    r.best_y = best_;
    if (timed_) {
      const auto elapsed = std::chrono::steady_clock::now() - start_;
      r.wall_ms = std::chrono::duration<double, std::milli>(elapsed).count();
    }
    trace_.records.push_back(std::move(r));
    return y;
  }

  std::size_t evaluations() const { return trace_.records.size(); }

 private:
  const Objective& f_;
  const SearchSpace& space_;
  Trace& trace_;
  bool timed_;
  std::chrono::steady_clock::time_point start_;
  double worst_ = -std::numeric_limits<double>::infinity();
  double best_ = std::numeric_limits<double>::infinity();
};

// Surrogates are fitted to z-scored targets so that the unit-scale priors on
// signal variance and noise apply to any objective.
std::shared_ptr<const Dataset> standardized(const Dataset& data) {
  auto out = std::make_shared<Dataset>(data);
  if (data.size() < 2) return out;
  const double mean = data.y.mean();
  const double sd = std::sqrt((data.y.array() - mean).square().mean());
  const double scale = sd > 0.0 && std::isfinite(sd) ? sd : 1.0;
  out->y = (data.y.array() - mean) / scale;
  return out;
}

void check_run(const SearchSpace& space, const RunConfig& cfg) {
  space.validate();
  cfg.validate();
}

// Shared body of BO, SBO and SPBO.
Trace run_continuous(const Objective& f, const SearchSpace& space, const RunConfig& cfg, SurrogateKernel kernel,
                     std::string algorithm, bool perturb) {
  check_run(space, cfg);
  if (space.continuous.empty()) throw InvalidArgument(algorithm + ": needs a continuous search space");
  if (!space.categorical.empty())
    throw InvalidArgument(algorithm + ": categorical variables are only supported by HBO");

  Trace trace;
  trace.algorithm = std::move(algorithm);
  trace.seed = cfg.seed;
  Recorder rec(f, space, trace, cfg.record_wall_time);

  const std::size_t d = space.continuous_dims();
  Rng model_rng = make_stream(cfg.seed, kModelStream);
  ContinuousProposer proposer(kernel, d, cfg, model_rng);
  for (const auto& p : initial_design(space, cfg.n_init, cfg.seed)) {
    const double y = rec.evaluate(from_unit(space, p.unit), {}, Phase::Init);
    proposer.observe(p.unit, y);
  }

  Rng perturb_rng = make_stream(cfg.seed, kPerturbStream);
  const std::size_t T = cfg.spbo_T();
  std::size_t used = 0;
  for (std::size_t i = 1; used < cfg.n_iter; ++i) {
    const std::vector<double> x = proposer.propose(i);
    const double y = rec.evaluate(from_unit(space, x), {}, Phase::Bo);
    proposer.observe(x, y);
    ++used;
    if (perturb && i < T && used < cfg.n_iter) {
      const double step = cfg.spbo.c / std::pow(static_cast<double>(i), cfg.spbo.gamma);
      std::vector<double> xp(d);
      for (std::size_t k = 0; k < d; ++k) {
        const double sign = (perturb_rng() >> 63) != 0 ? 1.0 : -1.0;
        xp[k] = std::clamp(x[k] + step * sign, 0.0, 1.0);
      }
      const double yp = rec.evaluate(from_unit(space, xp), {}, Phase::Perturbation);
      proposer.observe(xp, yp);
      ++used;
    }
  }
  trace.sampler_warnings = proposer.sampler_fallbacks();
  return trace;
}

std::vector<int> random_config(const SearchSpace& space, Rng& rng) {
  std::vector<int> cat(space.categorical.size());
  for (std::size_t k = 0; k < cat.size(); ++k)
    cat[k] = static_cast<int>(uniform_index(rng, static_cast<std::size_t>(space.categorical[k])));
  return cat;
}

std::vector<double> as_doubles(const std::vector<int>& v) { return {v.begin(), v.end()}; }

struct InnerResult {
  double y = std::numeric_limits<double>::infinity();
  std::vector<int> cat;
};

// Inner categorical optimization at a fixed continuous point.
InnerResult optimize_inner(Recorder& rec, const SearchSpace& space, const std::vector<double>& raw_c,
                           const std::optional<std::vector<int>>& start, const RunConfig& cfg, Rng& rng) {
  InnerResult best;
  auto consider = [&](const std::vector<int>& cat, double y) {
    if (y < best.y) {
      best.y = y;
      best.cat = cat;
    }
  };

  const std::size_t K = space.categorical_size();
  const std::size_t budget = cfg.hbo.inner;
  if (K <= budget) {
    for (std::size_t idx = 0; idx < K; ++idx) {
      const std::vector<int> cat = categorical_config(space, idx);
      consider(cat, rec.evaluate(raw_c, cat, Phase::HboInner));
    }
    return best;
  }

  const std::size_t dc = space.categorical_dims();
  ModelSpec spec;
  spec.kind = ModelKind::Hamming;
  spec.dims = dc;
  spec.learn_noise = cfg.learn_noise;
  spec.noise_variance = cfg.noise_variance;
  const HyperparameterSpace hspace(spec, cfg.priors);
  EnsembleOptions opts{cfg.mcmc_samples, cfg.burn_in, {}};
  Dataset data(dc);
  std::set<std::vector<int>> seen;

  std::vector<int> first = start ? *start : random_config(space, rng);
  seen.insert(first);
  const double y0 = rec.evaluate(raw_c, first, Phase::HboInner);
  data.append(as_doubles(first), y0);
  consider(first, y0);

  std::optional<std::vector<double>> warm;
  for (std::size_t k = 1; k < budget; ++k) {
    std::vector<std::vector<int>> cands;
    if (K <= kInnerEnumerationLimit) {
      for (std::size_t idx = 0; idx < K; ++idx) {
        auto c = categorical_config(space, idx);
        if (!seen.contains(c)) cands.push_back(std::move(c));
      }
    } else {
      for (std::size_t t = 0; t < kInnerRandomCandidates; ++t) {
        auto c = random_config(space, rng);
        if (!seen.contains(c)) cands.push_back(std::move(c));
      }
    }
    if (cands.empty()) break;

    auto snapshot = standardized(data);
    McmcEnsemble ens = sample_ensemble(snapshot, hspace, opts, rng, warm);
    warm = ens.last_state;
    PointMatrix cm(static_cast<Eigen::Index>(cands.size()), static_cast<Eigen::Index>(dc));
    for (std::size_t i = 0; i < cands.size(); ++i)
      for (std::size_t j = 0; j < dc; ++j)
        cm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cands[i][j];
    EnsembleAcquisition acq(ens, cfg.acquisition, snapshot->y.minCoeff(), k);
    const std::size_t pick = maximize_discrete([&acq](const PointMatrix& q) { return acq(q); }, cm);

    const std::vector<int>& cat = cands[pick];
    seen.insert(cat);
    const double y = rec.evaluate(raw_c, cat, Phase::HboInner);
    data.append(as_doubles(cat), y);
    consider(cat, y);
  }
  return best;
}

}  // namespace

std::vector<InitialPoint> initial_design(const SearchSpace& space, std::size_t n, std::uint64_t seed) {
  Rng rng = make_stream(seed, kInitStream);
  const auto lhs = latin_hypercube(n, space.continuous_dims(), rng);
  std::vector<InitialPoint> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i].unit = lhs[i];
    pts[i].cat = random_config(space, rng);
  }
  return pts;
}

ModelSpec model_spec_for(SurrogateKernel kernel, std::size_t dims, const RunConfig& cfg) {
  ModelSpec spec;
  spec.dims = dims;
  spec.learn_noise = cfg.learn_noise;
  spec.noise_variance = cfg.noise_variance;
  spec.weights = cfg.weights;
  switch (kernel) {
    case SurrogateKernel::Matern52Ard:
      spec.kind = ModelKind::Stationary;
      spec.base = BaseKernel::Matern52;
      break;
    case SurrogateKernel::SeArd:
      spec.kind = ModelKind::Stationary;
      spec.base = BaseKernel::SquaredExponential;
      break;
    case SurrogateKernel::Spartan:
      spec.kind = ModelKind::Spartan;
      spec.base = BaseKernel::Matern52;
      spec.fixed_pos = cfg.fixed_pos;
      break;
  }
  return spec;
}

ContinuousProposer::ContinuousProposer(SurrogateKernel kernel, std::size_t dims, const RunConfig& cfg, Rng& rng)
    : hspace_(model_spec_for(kernel, dims, cfg), cfg.priors), cfg_(cfg), rng_(rng), data_(dims) {}

void ContinuousProposer::observe(std::span<const double> unit, double y) { data_.append(unit, y); }

std::vector<double> ContinuousProposer::propose(std::size_t iteration) {
  auto snapshot = standardized(data_);
  EnsembleOptions opts{cfg_.mcmc_samples, cfg_.burn_in, {}};
  McmcEnsemble ens = sample_ensemble(snapshot, hspace_, opts, rng_, warm_);
  if (ens.sampler_fallback) ++fallbacks_;
  warm_ = ens.last_state;

  const double y_best = snapshot->empty() ? 0.0 : snapshot->y.minCoeff();
  const EnsembleAcquisition acq(ens, cfg_.acquisition, y_best, iteration);
  const auto seeds = maximizer_seeds(ens, *snapshot);
  MaximizeResult r = maximize([&acq](const PointMatrix& q) { return acq(q); }, data_.dims(), seeds, rng_,
                              cfg_.budget_for(data_.dims()));
  last_ensemble_ = std::move(ens);
  return std::move(r.x);
}

Trace run_bo(const Objective& f, const SearchSpace& space, const RunConfig& cfg) {
  return run_continuous(f, space, cfg, cfg.kernel, "bo", false);
}

Trace run_sbo(const Objective& f, const SearchSpace& space, const RunConfig& cfg) {
  return run_continuous(f, space, cfg, SurrogateKernel::Spartan, "sbo", false);
}

Trace run_spbo(const Objective& f, const SearchSpace& space, const RunConfig& cfg) {
  return run_continuous(f, space, cfg, cfg.kernel, "spbo", true);
}

Trace run_hbo(const Objective& f, const SearchSpace& space, const RunConfig& cfg) {
  check_run(space, cfg);
  if (space.continuous.empty() || space.categorical.empty())
    throw InvalidArgument("hbo: needs both continuous and categorical variables");

  Trace trace;
  trace.algorithm = "hbo";
  trace.seed = cfg.seed;
  Recorder rec(f, space, trace, cfg.record_wall_time);

  const std::size_t d = space.continuous_dims();
  Rng model_rng = make_stream(cfg.seed, kModelStream);
  Rng inner_rng = make_stream(cfg.seed, kInnerStream);
  ContinuousProposer outer(cfg.hbo.outer_kernel, d, cfg, model_rng);

  // Init records sit at arbitrary categories, so they are not samples of the
  // outer objective (best over the inner block). They only pick the first
  // outer point and the starting categorical incumbent.
  std::optional<std::vector<int>> best_cat;
  std::vector<double> first_x;
  double best_y = std::numeric_limits<double>::infinity();
  for (const auto& p : initial_design(space, cfg.n_init, cfg.seed)) {
    const double y = rec.evaluate(from_unit(space, p.unit), p.cat, Phase::Init);
    if (y < best_y) {
      best_y = y;
      best_cat = p.cat;
      first_x = p.unit;
    }
  }

  for (std::size_t n = 1; n <= cfg.hbo.outer; ++n) {
    const std::vector<double> xc = n == 1 ? first_x : outer.propose(n - 1);
    const std::vector<double> raw_c = from_unit(space, xc);
    InnerResult inner = optimize_inner(rec, space, raw_c, best_cat, cfg, inner_rng);
    double y = inner.y;
    if (cfg.hbo.reevaluate) y = rec.evaluate(raw_c, inner.cat, Phase::HboOuter);
    outer.observe(xc, y);
    if (y < best_y) {
      best_y = y;
      best_cat = inner.cat;
    }
  }
  trace.sampler_warnings = outer.sampler_fallbacks();
  return trace;
}

}  // namespace spartan
