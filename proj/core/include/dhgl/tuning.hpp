#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dhgl/alm.hpp"
#include "dhgl/datagen.hpp"
#include "dhgl/hyperparams.hpp"
#include "dhgl/report.hpp"
#include "dhgl/types.hpp"

namespace dhgl {

/// Search grids. lambda1 stays fixed; lambda2/lambda4 get the finer grids.
struct TuningGrid {
  double lambda1 = 0.4;
  std::vector<double> lambda2{0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<double> lambda3{1.0, 1.5, 2.0};
  std::vector<double> lambda4{0.05, 0.075, 0.1, 0.125, 0.15};
  std::vector<double> lambda5{0.5, 1.0};
  /// Descending sweep for the plain graphical-lasso stage of the
  /// unknown-hub strategy.
  std::vector<double> gl_lambda_sweep{0.8,  0.6, 0.5,  0.4,  0.3, 0.25,
                                      0.2, 0.15, 0.1, 0.075, 0.05};
  int folds = 5;  // 3 is the usual choice for very large p
};

/// Fold count rule: 5-fold, dropping to 3-fold for very large problems.
inline int default_fold_count(Index p) { return p >= 2500 ? 3 : 5; }

using SolverFn = std::function<std::pair<SymMatrix, SolveReport>(
    const SymMatrix&, const Hyperparams&)>;

SolverFn make_dadmm_solver(const DadmmOptions& opts);
SolverFn make_two_phase_solver(const TwoPhaseOptions& opts);

/// Centered empirical covariance of the given data rows.
SymMatrix covariance(const Matrix& X, CovDivisor div = CovDivisor::N);

/// Held-out negative log-likelihood (up to constants):
/// <S_val, Theta> - logdet(Theta). +inf for non-PD estimates.
double nll_score(const SymMatrix& S_val, const SymMatrix& Theta);

/// Seed-deterministic balanced partition of 0..n-1 into k folds
/// (sizes differ by at most one).
std::vector<std::vector<Index>> kfold_partition(Index n, int k,
                                                std::uint64_t seed);

struct CvRun {
  std::vector<Hyperparams> candidates;
  Matrix scores;              // candidates x folds; NaN marks a failed solve
  std::vector<double> means;  // +inf for excluded candidates
  std::size_t best = 0;
};

/// For every candidate and fold: solve on the training covariance, score on
/// the held-out covariance; returns the score table and the argmin. Grid
/// points x folds run in parallel on `threads` workers (0 = hardware).
CvRun kfold_cv(const Matrix& X, const std::vector<Hyperparams>& candidates,
               const SolverFn& solver, int k, std::uint64_t seed,
               int threads = 0, CovDivisor div = CovDivisor::N);

/// Plain graphical lasso (the column component pinned to zero), solved by a
/// two-block dual ADMM. Exact limit of the hub model as the column weights
/// grow without bound, but better conditioned than huge finite weights.
std::pair<SymMatrix, SolveReport> gl_solve(const SymMatrix& S, double lambda,
                                           const DadmmOptions& opts = {});

struct TuneResult {
  explicit TuneResult(Hyperparams selected) : hp(std::move(selected)) {}

  SymMatrix Theta;
  std::vector<Index> hubs;
  Hyperparams hp;                 // selected weights
  std::vector<Index> prior;       // constructed prior hub set
  std::vector<Index> stage1_hubs; // hubs of the plain-hub-model stage
  CvRun stage1_cv;                // plain-hub-model stage
  std::optional<CvRun> stage2_cv;
  bool used_prior = false;
  bool gl_sweep_failed = false;  // unknown-hub strategy fell back
  double gl_lambda = 0.0;        // accepted sweep value (unknown-hub strategy)
  SolveReport final_report;
};

struct TuneOptions {
  TuningGrid grid;
  SolverFn cv_solver;     // low-accuracy solver for fold fits
  SolverFn final_solver;  // full-accuracy solver for the returned estimate
  int folds = 0;          // 0 = default_fold_count(p)
  std::uint64_t seed = 0;
  int threads = 0;
  CovDivisor div = CovDivisor::N;
  double hub_epsilon = 1e-5;
  Index hub_degree = -1;  // -1 = floor(p/5)
};

/// Known-hub strategy: fit the plain hub model by cross-validation, set the
/// prior to the known hubs it missed, and refit with discounted weights on
/// that set (lambda4/lambda5 cross-validated). Estimated hubs are the union
/// of both stages.
TuneResult dhgl_known_hubs(const Matrix& X, const std::vector<Index>& known,
                           const TuneOptions& opts);

/// Unknown-hub strategy: build the prior from a graphical-lasso sweep that
/// adds a few new hub candidates (caps a = 2, b = 1.1 on the union size),
/// then refit with lambda4 = lambda2 and lambda5 cross-validated.
TuneResult dhgl_unknown_hubs(const Matrix& X, const TuneOptions& opts,
                             double a = 2.0, double b = 1.1);

}  // namespace dhgl
