#include "dhgl/dadmm.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dhgl/evaluation.hpp"
#include "dhgl/objectives.hpp"
#include "dhgl/prox.hpp"

namespace dhgl {

SolverState SolverState::initial(Index p, double sigma0, double tau0) {
  SolverState s;
  s.Theta = SymMatrix::Identity(p);
  s.Omega = SymMatrix::Identity(p);
  s.Z = SymMatrix::Zero(p);
  s.Y = SymMatrix::Zero(p);
  s.Gamma = SymMatrix::Zero(p);
  s.V = Matrix::Zero(p, p);
  s.Lambda = Matrix::Zero(p, p);
  s.sigma = sigma0;
  s.tau = tau0;
  s.iter = 0;
  return s;
}

void dadmm_step(SolverState& s, const SymMatrix& S, const Hyperparams& hp) {
  const double sigma = s.sigma;
  const double tau = s.tau;

  // Block 1: exact minimizer over Y of the augmented Lagrangian.
  Matrix Ymat = (s.Theta.mat() - s.Z.mat() - s.V - s.V.transpose()) /
                    (6.0 * sigma) +
                (s.Gamma.mat() + s.Lambda + s.Lambda.transpose() -
                 S.mat() + s.Omega.mat()) /
                    6.0;
  SymMatrix Y(std::move(Ymat));

  // Block 2: the three independent proximal updates.
  SymMatrix Omega = pd_split_pos(
      SymMatrix(S.mat() + Y.mat() - s.Theta.mat() / sigma), 1.0 / sigma);
  SymMatrix Gamma = prox_edge_l1_conj(
      SymMatrix(Y.mat() + s.Z.mat() / sigma), hp.lambda1(), sigma);
  Matrix Lambda = prox_col_sparse_group_conj(
      2.0 * Y.mat() + s.V / sigma, hp, sigma);

  // Block 3: multiplier updates with step tau * sigma.
  SymMatrix Theta(
      (s.Theta.mat() - tau * sigma * (S.mat() - Omega.mat() + Y.mat())).eval());
  SymMatrix Z((s.Z.mat() - tau * sigma * (Gamma.mat() - Y.mat())).eval());
  Matrix V = s.V - tau * sigma * (Lambda - 2.0 * Y.mat());

  s.Y = std::move(Y);
  s.Omega = std::move(Omega);
  s.Gamma = std::move(Gamma);
  s.Lambda = std::move(Lambda);
  s.Theta = std::move(Theta);
  s.Z = std::move(Z);
  s.V = std::move(V);
  ++s.iter;
}

Residuals kkt_residuals(const SolverState& s, const SymMatrix& S,
                        const Hyperparams& hp) {
  Residuals r;
  const Matrix& Th = s.Theta.mat();
  r.primal = (Th - s.Z.mat() - s.V - s.V.transpose()).norm() / (1.0 + Th.norm());
  r.dual = (S.mat() - s.Omega.mat() + s.Y.mat()).norm() / (1.0 + S.mat().norm());

  const Index p = s.Theta.dim();
  const double c1 = (Th * s.Omega.mat() - Matrix::Identity(p, p)).norm() /
                    (1.0 + Th.norm() + s.Omega.mat().norm());
  const double c2 =
      (s.Z.mat() -
       prox_edge_l1(SymMatrix(s.Y.mat() + s.Z.mat()), hp.lambda1(), 1.0).mat())
          .norm() /
      (1.0 + s.Z.mat().norm());
  const double c3 =
      (s.V - prox_col_sparse_group(s.V + 2.0 * s.Y.mat(), hp, 1.0)).norm() /
      (1.0 + s.V.norm());
  r.comp = std::max({c1, c2, c3});
  return r;
}

std::pair<SolverState, SolveReport> dadmm_solve(const SymMatrix& S,
                                                const Hyperparams& hp,
                                                SolverState state,
                                                const DadmmOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("dadmm: tol must be > 0");
  const auto t0 = std::chrono::steady_clock::now();

  SolveReport rep;
  rep.solver = "dadmm";

  Residuals res = kkt_residuals(state, S, hp);
  int it = 0;
  double rp_acc = res.primal, rd_acc = res.dual;
  for (; it < opts.max_iter && res.max_residual() >= opts.tol; ++it) {
    dadmm_step(state, S, hp);
    res = kkt_residuals(state, S, hp);
    if (!res.finite() || res.max_residual() > opts.divergence_threshold) {
      throw std::runtime_error(
          "dadmm: diverged at iteration " + std::to_string(state.iter) +
          " (max residual " + std::to_string(res.max_residual()) +
          ", sigma " + std::to_string(state.sigma) + ")");
    }
    if (opts.trace) opts.trace({state.iter, res, state.sigma});
    rp_acc = res.primal;
    rd_acc = res.dual;
    if (opts.adaptive_sigma && state.iter % 50 == 0) {
      if (rp_acc > 10.0 * rd_acc) {
        state.sigma = std::min(state.sigma * 2.0, 1e4);
      } else if (rd_acc > 10.0 * rp_acc) {
        state.sigma = std::max(state.sigma / 2.0, 1e-4);
      }
    }
  }

  rep.converged = res.max_residual() < opts.tol;
  rep.residuals = res;
  rep.phase1_iters = it;
  rep.primal_objective = primal_objective(state.Theta, state.Z, state.V, S, hp);
  rep.dual_objective = dual_objective(state.Y, state.Omega, state.Lambda, hp);
  rep.estimated_hubs =
      make_graph_estimate(state.Theta).hubs;
  rep.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return {std::move(state), std::move(rep)};
}

std::pair<SolverState, SolveReport> dadmm_solve(const SymMatrix& S,
                                                const Hyperparams& hp,
                                                const DadmmOptions& opts) {
  SolverState s = SolverState::initial(S.dim(), opts.sigma0, opts.tau);
  return dadmm_solve(S, hp, std::move(s), opts);
}

}  // namespace dhgl
