#pragma once

#include <functional>
#include <vector>

#include "spartan/acquisition/criteria.hpp"
#include "spartan/random.hpp"

namespace spartan {

// Scores every row of a query matrix; higher is better.
using AcquisitionBatch = std::function<std::vector<double>(const PointMatrix&)>;

// Batched criterion over an MCMC ensemble for a fixed incumbent and
// iteration. Under EIIG the information-gain term is skipped at inputs where
// some member's variance is below 1e-14 (an already-observed input).
class EnsembleAcquisition {
 public:
  EnsembleAcquisition(const McmcEnsemble& ensemble, AcquisitionConfig config, double y_best,
                      std::size_t iteration);

  std::vector<double> operator()(const PointMatrix& queries) const;
  double operator()(std::span<const double> x) const;

 private:
  const McmcEnsemble* ensemble_;
  AcquisitionConfig config_;
  double y_best_;
  std::size_t iteration_;
};

struct MaximizeResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
};

// Scores `budget.candidates` uniform points of [0,1]^dims followed by
// `seeds`, keeps the first best (lowest index on ties), then runs a
// coordinate pattern search from it inside the box using at most
// `budget.refine_evaluations` further evaluations. Throws NumericFailure if
// no candidate has a finite score.
MaximizeResult maximize(const AcquisitionBatch& acq, std::size_t dims,
                        const std::vector<std::vector<double>>& seeds, Rng& rng, const MaximizerBudget& budget);

// Observed incumbents (every point that was the best so far when evaluated)
// plus the local-kernel centre of each Spartan member.
std::vector<std::vector<double>> maximizer_seeds(const McmcEnsemble& ensemble, const Dataset& data);

// Index of the highest-scoring row of `candidates` (first on ties).
std::size_t maximize_discrete(const AcquisitionBatch& acq, const PointMatrix& candidates);

}  // namespace spartan
