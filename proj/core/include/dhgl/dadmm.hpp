#pragma once

#include <utility>

#include "dhgl/hyperparams.hpp"
#include "dhgl/report.hpp"
#include "dhgl/types.hpp"

namespace dhgl {

/// Bundled primal (Theta, Z, V) and dual (Y, Omega, Gamma, Lambda) iterates.
/// V and Lambda live in the space of general square matrices: the column
/// penalty discriminates columns, so its prox does not preserve symmetry
/// along the iterations (the limits are symmetric).
struct SolverState {
  SymMatrix Theta, Z, Y, Omega, Gamma;
  Matrix V, Lambda;
  double sigma = 1.0;
  double tau = 1.618;
  int iter = 0;

  /// Default start: Theta = Omega = I, everything else zero.
  static SolverState initial(Index p, double sigma0 = 1.0,
                             double tau0 = 1.618);
};

struct DadmmOptions {
  double tol = 1e-6;
  int max_iter = 10000;
  double sigma0 = 1.0;
  /// Step-length factor; admissible range (0, (1+sqrt(5))/2). The recommended
  /// value 1.618 sits above the stricter (1+sqrt(2))/2 bound that sometimes
  /// appears next to it; the larger golden-ratio bound is the operative one.
  double tau = 1.618;
  /// Residual balancing: every 50 iterations multiply sigma by 2 when
  /// primal/dual > 10, divide when dual/primal > 10, clamp to [1e-4, 1e4].
  bool adaptive_sigma = false;
  double divergence_threshold = 1e8;
  DadmmTraceSink trace;
};

/// One pass of the three-block dual ADMM update (multiplier step tau*sigma).
void dadmm_step(SolverState& s, const SymMatrix& S, const Hyperparams& hp);

/// Normalized KKT residuals of the current iterate.
Residuals kkt_residuals(const SolverState& s, const SymMatrix& S,
                        const Hyperparams& hp);

std::pair<SolverState, SolveReport> dadmm_solve(const SymMatrix& S,
                                                const Hyperparams& hp,
                                                const DadmmOptions& opts = {});

/// Warm-started variant; sigma/tau are taken from opts, iterates from init.
std::pair<SolverState, SolveReport> dadmm_solve(const SymMatrix& S,
                                                const Hyperparams& hp,
                                                SolverState init,
                                                const DadmmOptions& opts);

}  // namespace dhgl
