#pragma once

#include <functional>
#include <utility>

#include "dhgl/dadmm.hpp"
#include "dhgl/hyperparams.hpp"
#include "dhgl/jacobian.hpp"
#include "dhgl/objectives.hpp"
#include "dhgl/report.hpp"
#include "dhgl/types.hpp"

namespace dhgl {

/// Proximal anchor points (the primal iterates the outer loop holds fixed
/// while the subproblem in Y is solved).
struct Anchors {
  Matrix theta;  // symmetric
  Matrix z;      // symmetric
  Matrix v;      // general
};

struct DualPoint {
  SymMatrix Y, Omega, Gamma;
  Matrix Lambda;
};

struct PrimalPoint {
  SymMatrix Theta, Z;
  Matrix V;
};

struct AlmConfig {
  double sigma0 = 1.0;
  double tol = 1e-6;
  int max_outer = 200;
  /// Doubling cap; unbounded growth destroys the Newton-system conditioning.
  double sigma_cap = 1e8;
  /// Inner gap tolerances eps_k = eps0 * eps_ratio^k (summable) and
  /// delta_k = delta0 * delta_ratio^k (summable, < 1).
  double eps0 = 1.0;
  double eps_ratio = 0.5;
  double delta0 = 0.5;
  double delta_ratio = 0.5;
  /// Inexactness policy: a subproblem is also accepted once its gradient
  /// norm has dropped by this factor from the value at entry. Grinding the
  /// subproblem further mostly polishes an anchor point the multiplier
  /// update is about to move; the penalty doubling carries the progress.
  double inner_grad_reduction = 0.1;
  AlmTraceSink trace;
};

/// Passed the assembled Newton system right after its PCG solve; the
/// callables are only valid for the duration of the call.
struct NewtonSystemInfo {
  const std::function<Matrix(const Matrix&)>& apply_W;
  const Matrix& rhs;
  const Matrix& precond;
  double tol = 0.0;
  int pcg_iters = 0;
  double pcg_resid = 0.0;
};
using NewtonSystemObserver = std::function<void(const NewtonSystemInfo&)>;

struct SsnConfig {
  double eta = 0.1;       // in (0, 1)
  double beta = 0.1;      // in (0, 1]
  double mu = 1e-3;       // in (0, 1/2)
  double delta_ls = 0.5;  // in (0, 1)
  int max_newton = 50;
  int max_pcg = 500;
  int max_backtracks = 50;
  SsnTraceSink trace;
  NewtonSystemObserver observer;
};

// ---------------------------------------------------------------------------
// The reduced subproblem in Y. One eigendecomposition per evaluation yields
// the objective, the gradient, and every piece the Newton system needs.
// ---------------------------------------------------------------------------
class AlmSubproblem {
 public:
  AlmSubproblem(const SymMatrix& S, Anchors anchors, double sigma,
                const Hyperparams& hp);

  struct Eval {
    double value = 0.0;
    Matrix grad;
    EigenDecomposition eigA;  // of A = theta_anchor - sigma (S + Y)
    Vector pos, neg;          // spectral split of A at gamma = sigma
    Matrix pos_mat;           // matrix form of the positive factor
    Matrix proxQ;             // prox of the edge penalty at sigma Y + Z anchor
    Matrix proxR;             // prox of the column penalty at 2 sigma Y + V
    Matrix proxPsi;           // its l1 stage (feeds the group Jacobian)
  };

  double value(const Matrix& Y) const;
  Eval eval(const Matrix& Y) const;

  /// Closed-form dual block and multiplier updates at Y.
  struct Updates {
    DualPoint dual;
    PrimalPoint primal;
  };
  Updates updates(const Matrix& Y, const Eval& e) const;

  const SymMatrix& S() const { return S_; }
  const Anchors& anchors() const { return anchors_; }
  double sigma() const { return sigma_; }
  const Hyperparams& hp() const { return hp_; }

 private:
  const SymMatrix& S_;
  Anchors anchors_;
  double sigma_;
  const Hyperparams& hp_;
  double const_term_;
};

/// Subproblem objective at Y (exact, constants included).
double phi_value(const SymMatrix& Y, const SymMatrix& S, const Anchors& a,
                 double sigma, const Hyperparams& hp);

/// Subproblem gradient at Y (symmetric).
SymMatrix grad_phi(const SymMatrix& Y, const SymMatrix& S, const Anchors& a,
                   double sigma, const Hyperparams& hp);

/// Augmented Lagrangian of the dual problem at X_D for the given anchors.
/// Assumes Gamma and Lambda lie in their conjugate-ball sets (true for
/// prox-generated points), where the conjugate terms vanish. +inf when Omega
/// is not positive definite.
double dual_aug_lagrangian(const DualPoint& xd, const Anchors& a, double sigma,
                           const SymMatrix& S, const Hyperparams& hp);

/// Duality gap f_k(X_D) - g_k(X_P) used by the inner stopping tests. g_k is
/// evaluated at the feasibility-restored point (Z + V + V^T, Z, V); a
/// non-PD restored point yields +inf.
double stopping_gap(const DualPoint& xd, const PrimalPoint& xp,
                    const Anchors& anchor, double sigma, const SymMatrix& S,
                    const Hyperparams& hp);

// ---------------------------------------------------------------------------
// Linear algebra: preconditioned CG on the space of symmetric matrices.
// ---------------------------------------------------------------------------
struct PcgResult {
  Matrix x;
  int iters = 0;
  double resid = 0.0;
  bool converged = false;
};

/// Solves W[x] = rhs for self-adjoint positive definite W, stopping when
/// ||rhs - W[x]|| <= tol. precond holds the elementwise-division diagonal.
PcgResult pcg(const std::function<Matrix(const Matrix&)>& W, const Matrix& rhs,
              const Matrix& precond, double tol, int max_iter);

// ---------------------------------------------------------------------------
// Semismooth Newton for min Phi.
// ---------------------------------------------------------------------------
struct SsnResult {
  Matrix Y;
  AlmSubproblem::Eval eval;
  int newton_iters = 0;
  int pcg_iters_total = 0;
};

using SsnStopPredicate =
    std::function<bool(const Matrix& Y, const AlmSubproblem::Eval&)>;

/// Newton iteration with PCG directions and Armijo backtracking. Stops when
/// extra_stop fires, when ||grad|| <= grad_tol, or after max_newton steps.
SsnResult ssn_solve(const AlmSubproblem& sub, Matrix Y0, const SsnConfig& cfg,
                    double grad_tol, const SsnStopPredicate& extra_stop = {});

/// Standalone form: minimizes the subproblem at the given anchors until
/// ||grad|| <= inner_tol.
SymMatrix ssn_solve(const SymMatrix& Y0, const SymMatrix& S, const Anchors& a,
                    double sigma, const Hyperparams& hp, const SsnConfig& cfg,
                    double inner_tol);

// ---------------------------------------------------------------------------
// Outer loops.
// ---------------------------------------------------------------------------
std::pair<SolverState, SolveReport> alm_solve(const SymMatrix& S,
                                              const Hyperparams& hp,
                                              SolverState init,
                                              const AlmConfig& cfg = {},
                                              const SsnConfig& ssn_cfg = {});

struct TwoPhaseOptions {
  double tol = 1e-6;
  double switch_tol = 1e-4;
  int phase1_max_iter = 200;
  DadmmOptions dadmm;
  AlmConfig alm;
  SsnConfig ssn;
};

/// Phase I to switch_tol (capped), then the outer loop to tol.
std::pair<SolverState, SolveReport> two_phase_solve(
    const SymMatrix& S, const Hyperparams& hp, const TwoPhaseOptions& opts = {});

}  // namespace dhgl
