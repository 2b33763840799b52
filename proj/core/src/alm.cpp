#include "dhgl/alm.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "dhgl/evaluation.hpp"
#include "dhgl/prox.hpp"

namespace dhgl {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double frob_dot(const Matrix& a, const Matrix& b) {
  return a.cwiseProduct(b).sum();
}
}  // namespace

// ---------------------------------------------------------------------------
// Objectives.
// ---------------------------------------------------------------------------

double logdet_psd(const Matrix& X) {
  Eigen::LLT<Matrix> llt(X);
  if (llt.info() != Eigen::Success) return -kInf;
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

double logdet_psd(const SymMatrix& X) { return logdet_psd(X.mat()); }

double primal_objective(const SymMatrix& Theta, const SymMatrix& Z,
                        const Matrix& V, const SymMatrix& S,
                        const Hyperparams& hp) {
  const double ld = logdet_psd(Theta);
  if (!std::isfinite(ld)) return kInf;
  return frob_dot(S.mat(), Theta.mat()) - ld +
         edge_l1_value(Z, hp.lambda1()) + col_sparse_group_value(V, hp);
}

double dual_objective(const SymMatrix& Y, const SymMatrix& Omega,
                      const Matrix& Lambda, const Hyperparams& hp) {
  const double ld = logdet_psd(Omega);
  if (!std::isfinite(ld)) return -kInf;
  // Conjugates of the two penalties are ball indicators; membership distance
  // equals the norm of the corresponding prox.
  const double dist_q = prox_edge_l1(Y, hp.lambda1(), 1.0).mat().norm();
  if (dist_q > 1e-6 * (1.0 + Y.mat().norm())) return -kInf;
  const double dist_r = prox_col_sparse_group(Lambda, hp, 1.0).norm();
  if (dist_r > 1e-6 * (1.0 + Lambda.norm())) return -kInf;
  return ld + double(Omega.dim());
}

// ---------------------------------------------------------------------------
// Subproblem.
// ---------------------------------------------------------------------------

AlmSubproblem::AlmSubproblem(const SymMatrix& S, Anchors anchors, double sigma,
                             const Hyperparams& hp)
    : S_(S), anchors_(std::move(anchors)), sigma_(sigma), hp_(hp) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("AlmSubproblem: sigma must be positive");
  }
  const double sq = anchors_.theta.squaredNorm() + anchors_.z.squaredNorm() +
                    anchors_.v.squaredNorm();
  const_term_ = -sq / (2.0 * sigma_) - double(S.dim());
}

double AlmSubproblem::value(const Matrix& Y) const {
  const double s = sigma_;
  const Index p = S_.dim();
  Matrix A = anchors_.theta - s * (S_.mat() + Y);
  const EigenDecomposition ed = eig_sym(SymMatrix::FromExact(std::move(A)));
  auto [pos, neg] = pd_split_spectrum(ed.vals, s);
  const double t_logdet = -neg.array().log().sum() +
                          double(p) * std::log(s) +
                          pos.squaredNorm() / (2.0 * s);
  const double t_edge =
      prox_edge_l1(SymMatrix::FromExact(s * Y + anchors_.z), hp_.lambda1(), s)
          .mat()
          .squaredNorm() /
      (2.0 * s);
  const double t_col =
      prox_col_sparse_group(2.0 * s * Y + anchors_.v, hp_, s).squaredNorm() /
      (2.0 * s);
  return t_logdet + t_edge + t_col + const_term_;
}

AlmSubproblem::Eval AlmSubproblem::eval(const Matrix& Y) const {
  const double s = sigma_;
  const Index p = S_.dim();
  Eval e;
  Matrix A = anchors_.theta - s * (S_.mat() + Y);
  e.eigA = eig_sym(SymMatrix::FromExact(std::move(A)));
  auto split = pd_split_spectrum(e.eigA.vals, s);
  e.pos = std::move(split.first);
  e.neg = std::move(split.second);
  e.pos_mat = assemble(e.eigA, e.pos).mat();
  e.proxQ =
      prox_edge_l1(SymMatrix::FromExact(s * Y + anchors_.z), hp_.lambda1(), s)
          .mat();
  e.proxPsi = prox_col_l1(2.0 * s * Y + anchors_.v, hp_, s);
  e.proxR = prox_col_l2(e.proxPsi, hp_, s);

  e.value = -e.neg.array().log().sum() + double(p) * std::log(s) +
            e.pos.squaredNorm() / (2.0 * s) +
            e.proxQ.squaredNorm() / (2.0 * s) +
            e.proxR.squaredNorm() / (2.0 * s) + const_term_;
  e.grad = -e.pos_mat + e.proxQ + e.proxR + e.proxR.transpose();
  return e;
}

AlmSubproblem::Updates AlmSubproblem::updates(const Matrix& Y,
                                              const Eval& e) const {
  const double s = sigma_;
  Updates u;
  Matrix A = anchors_.theta - s * (S_.mat() + Y);
  u.dual.Omega = SymMatrix::FromExact(((e.pos_mat - A) / s).eval());
  u.dual.Gamma = SymMatrix::FromExact(
      (Y + anchors_.z / s - e.proxQ / s).eval());
  u.dual.Lambda = 2.0 * Y + anchors_.v / s - e.proxR / s;
  u.dual.Y = SymMatrix::FromExact(Y);

  u.primal.Theta = SymMatrix::FromExact(
      (anchors_.theta - s * (S_.mat() - u.dual.Omega.mat() + Y)).eval());
  u.primal.Z = SymMatrix::FromExact(
      (anchors_.z - s * (u.dual.Gamma.mat() - Y)).eval());
  u.primal.V = anchors_.v - s * (u.dual.Lambda - 2.0 * Y);
  return u;
}

double phi_value(const SymMatrix& Y, const SymMatrix& S, const Anchors& a,
                 double sigma, const Hyperparams& hp) {
  return AlmSubproblem(S, a, sigma, hp).value(Y.mat());
}

SymMatrix grad_phi(const SymMatrix& Y, const SymMatrix& S, const Anchors& a,
                   double sigma, const Hyperparams& hp) {
  AlmSubproblem sub(S, a, sigma, hp);
  Matrix g = sub.eval(Y.mat()).grad;
  return SymMatrix(std::move(g));
}

// ---------------------------------------------------------------------------
// Gap machinery.
// ---------------------------------------------------------------------------

double dual_aug_lagrangian(const DualPoint& xd, const Anchors& a, double sigma,
                           const SymMatrix& S, const Hyperparams& hp) {
  (void)hp;
  const double ld = logdet_psd(xd.Omega);
  if (!std::isfinite(ld)) return kInf;
  const Matrix rd = S.mat() - xd.Omega.mat() + xd.Y.mat();
  const Matrix rg = xd.Gamma.mat() - xd.Y.mat();
  const Matrix rl = xd.Lambda - 2.0 * xd.Y.mat();
  return -ld - double(S.dim()) - frob_dot(a.theta, rd) - frob_dot(a.z, rg) -
         frob_dot(a.v, rl) +
         (sigma / 2.0) *
             (rd.squaredNorm() + rg.squaredNorm() + rl.squaredNorm());
}

double stopping_gap(const DualPoint& xd, const PrimalPoint& xp,
                    const Anchors& anchor, double sigma, const SymMatrix& S,
                    const Hyperparams& hp) {
  const double f = dual_aug_lagrangian(xd, anchor, sigma, S, hp);
  if (!std::isfinite(f)) return kInf;

  // Feasibility-restored primal point.
  const Matrix theta_f = xp.Z.mat() + xp.V + xp.V.transpose();
  const double ld = logdet_psd(theta_f);
  if (!std::isfinite(ld)) return kInf;
  const double g =
      ld - frob_dot(S.mat(), theta_f) - edge_l1_value(xp.Z, hp.lambda1()) -
      col_sparse_group_value(xp.V, hp) -
      ((theta_f - anchor.theta).squaredNorm() +
       (xp.Z.mat() - anchor.z).squaredNorm() +
       (xp.V - anchor.v).squaredNorm()) /
          (2.0 * sigma);
  return f - g;
}

// ---------------------------------------------------------------------------
// PCG.
// ---------------------------------------------------------------------------

PcgResult pcg(const std::function<Matrix(const Matrix&)>& W, const Matrix& rhs,
              const Matrix& precond, double tol, int max_iter) {
  PcgResult out;
  out.x = Matrix::Zero(rhs.rows(), rhs.cols());
  Matrix r = rhs;
  double rnorm = r.norm();
  if (rnorm <= tol) {
    out.resid = rnorm;
    out.converged = true;
    return out;
  }
  Matrix z = r.cwiseQuotient(precond);
  Matrix q = z;
  double rho = frob_dot(r, z);
  for (int it = 0; it < max_iter; ++it) {
    Matrix v = W(q);
    const double qv = frob_dot(q, v);
    if (!(qv > 0.0) || !std::isfinite(qv)) {
      throw std::runtime_error(
          "pcg: operator lost positive definiteness (q'Wq = " +
          std::to_string(qv) + ")");
    }
    const double alpha = rho / qv;
    out.x += alpha * q;
    r -= alpha * v;
    ++out.iters;
    rnorm = r.norm();
    if (!std::isfinite(rnorm)) {
      throw std::runtime_error("pcg: non-finite residual");
    }
    if (rnorm <= tol) {
      out.converged = true;
      break;
    }
    z = r.cwiseQuotient(precond);
    const double rho_next = frob_dot(r, z);
    q = z + (rho_next / rho) * q;
    rho = rho_next;
  }
  out.resid = rnorm;
  return out;
}

// ---------------------------------------------------------------------------
// SSN.
// ---------------------------------------------------------------------------

namespace {
void check_ssn_config(const SsnConfig& c) {
  if (!(c.eta > 0.0 && c.eta < 1.0))
    throw std::invalid_argument("ssn: eta must lie in (0,1)");
  if (!(c.beta > 0.0 && c.beta <= 1.0))
    throw std::invalid_argument("ssn: beta must lie in (0,1]");
  if (!(c.mu > 0.0 && c.mu < 0.5))
    throw std::invalid_argument("ssn: mu must lie in (0,1/2)");
  if (!(c.delta_ls > 0.0 && c.delta_ls < 1.0))
    throw std::invalid_argument("ssn: line-search ratio must lie in (0,1)");
}
}  // namespace

SsnResult ssn_solve(const AlmSubproblem& sub, Matrix Y0, const SsnConfig& cfg,
                    double grad_tol, const SsnStopPredicate& extra_stop) {
  check_ssn_config(cfg);
  const double s = sub.sigma();

  SsnResult out;
  out.Y = std::move(Y0);
  out.eval = sub.eval(out.Y);

  while (true) {
    if (extra_stop && extra_stop(out.Y, out.eval)) break;
    const double gnorm = out.eval.grad.norm();
    if (gnorm <= grad_tol) break;
    if (out.newton_iters >= cfg.max_newton) break;

    const LogDetProxDeriv jld = logdet_prox_deriv(out.eval.eigA, s);
    const EdgeL1Jacobian jq = edge_l1_jacobian(
        SymMatrix::FromExact(s * out.Y + sub.anchors().z),
        s * sub.hp().lambda1());
    const ColSparseGroupJacobian jr = col_sparse_group_jacobian(
        2.0 * s * out.Y + sub.anchors().v, out.eval.proxPsi, sub.hp(), s);
    const NewtonOperator W{&jld, &jq, &jr, s};

    Matrix D = precond_diag(jld, jq, jr);
    D = 0.5 * (D + D.transpose()).eval();  // keep the action inside S^p

    const double pcg_tol = std::min(cfg.eta, std::pow(gnorm, 1.0 + cfg.beta));
    const Matrix rhs = -out.eval.grad;
    const std::function<Matrix(const Matrix&)> apply_W =
        [&W](const Matrix& H) { return W.apply(H); };
    PcgResult pr = pcg(apply_W, rhs, D, pcg_tol, cfg.max_pcg);
    if (!pr.converged) {
      std::cerr << "dhgl: warning: pcg hit its iteration cap (resid "
                << pr.resid << " > tol " << pcg_tol
                << "), continuing with the current direction\n";
    }
    out.pcg_iters_total += pr.iters;
    if (cfg.observer) {
      cfg.observer(
          NewtonSystemInfo{apply_W, rhs, D, pcg_tol, pr.iters, pr.resid});
    }

    const Matrix& H = pr.x;
    const double slope = frob_dot(out.eval.grad, H);
    if (-slope <= 4.0 * std::numeric_limits<double>::epsilon() *
                      (1.0 + std::abs(out.eval.value))) {
      break;  // predicted decrease below the fp resolution of the objective
    }
    if (!(slope < 0.0)) {
      throw std::runtime_error(
          "ssn: computed direction is not a descent direction (slope = " +
          std::to_string(slope) + ")");
    }
    double alpha = 1.0;
    int m = 0;
    bool accepted = false;
    for (; m <= cfg.max_backtracks; ++m) {
      if (sub.value(out.Y + alpha * H) <=
          out.eval.value + cfg.mu * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= cfg.delta_ls;
    }
    if (!accepted) {
      throw std::runtime_error(
          "ssn: line search failed after " +
          std::to_string(cfg.max_backtracks) +
          " backtracks; gradient and Jacobian are inconsistent");
    }

    out.Y += alpha * H;
    out.eval = sub.eval(out.Y);
    ++out.newton_iters;
    if (cfg.trace) {
      cfg.trace(SsnTrace{out.newton_iters, out.eval.value,
                         out.eval.grad.norm(), pr.iters, pr.resid, pcg_tol,
                         alpha});
    }
  }
  return out;
}

SymMatrix ssn_solve(const SymMatrix& Y0, const SymMatrix& S, const Anchors& a,
                    double sigma, const Hyperparams& hp, const SsnConfig& cfg,
                    double inner_tol) {
  AlmSubproblem sub(S, a, sigma, hp);
  SsnResult r = ssn_solve(sub, Y0.mat(), cfg, inner_tol);
  return SymMatrix::FromExact(std::move(r.Y));
}

// ---------------------------------------------------------------------------
// Outer loops.
// ---------------------------------------------------------------------------

std::pair<SolverState, SolveReport> alm_solve(const SymMatrix& S,
                                              const Hyperparams& hp,
                                              SolverState state,
                                              const AlmConfig& cfg,
                                              const SsnConfig& ssn_cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  state.sigma = cfg.sigma0;

  SolveReport rep;
  rep.solver = "alm";

  Residuals res = kkt_residuals(state, S, hp);
  bool converged = res.max_residual() < cfg.tol;
  Matrix Y = state.Y.mat();
  const double grad_floor = std::max(1e-10, 0.1 * cfg.tol);

  for (int k = 0; !converged && k < cfg.max_outer; ++k) {
    const Anchors anchors{state.Theta.mat(), state.Z.mat(), state.V};
    AlmSubproblem sub(S, anchors, state.sigma, hp);
    const double eps_k = cfg.eps0 * std::pow(cfg.eps_ratio, k);
    const double delta_k = cfg.delta0 * std::pow(cfg.delta_ratio, k);
    const double sigma = state.sigma;

    double entry_gnorm = -1.0;
    const SsnStopPredicate inner_stop = [&](const Matrix& Yc,
                                            const AlmSubproblem::Eval& e) {
      const double gnorm = e.grad.norm();
      if (entry_gnorm < 0.0) {
        entry_gnorm = gnorm;
      } else if (gnorm <= cfg.inner_grad_reduction * entry_gnorm) {
        return true;
      }
      const AlmSubproblem::Updates u = sub.updates(Yc, e);
      const double gap = stopping_gap(u.dual, u.primal, anchors, sigma, S, hp);
      const double dxp2 =
          (u.primal.Theta.mat() - anchors.theta).squaredNorm() +
          (u.primal.Z.mat() - anchors.z).squaredNorm() +
          (u.primal.V - anchors.v).squaredNorm();
      const bool crit_a = gap <= eps_k * eps_k / (2.0 * sigma);
      const bool crit_b = gap <= delta_k * delta_k / (2.0 * sigma) * dxp2;
      if (crit_a && crit_b) return true;
      // The multiplier update may already meet the outer target (it is the
      // overall termination test); solving the subproblem further would only
      // burn Newton steps on an anchor point about to move.
      SolverState cand;
      cand.Theta = u.primal.Theta;
      cand.Z = u.primal.Z;
      cand.V = u.primal.V;
      cand.Y = u.dual.Y;
      cand.Omega = u.dual.Omega;
      cand.Gamma = u.dual.Gamma;
      cand.Lambda = u.dual.Lambda;
      return kkt_residuals(cand, S, hp).max_residual() < cfg.tol;
    };

    SsnResult sr = ssn_solve(sub, std::move(Y), ssn_cfg, grad_floor,
                             inner_stop);
    Y = std::move(sr.Y);
    rep.phase2_inner += sr.newton_iters;

    const AlmSubproblem::Updates u = sub.updates(Y, sr.eval);
    state.Theta = u.primal.Theta;
    state.Z = u.primal.Z;
    state.V = u.primal.V;
    state.Y = u.dual.Y;
    state.Omega = u.dual.Omega;
    state.Gamma = u.dual.Gamma;
    state.Lambda = u.dual.Lambda;
    ++state.iter;
    rep.phase2_outer = k + 1;

    res = kkt_residuals(state, S, hp);
    converged = res.max_residual() < cfg.tol;
    state.sigma = std::min(2.0 * state.sigma, cfg.sigma_cap);

    if (cfg.trace) {
      cfg.trace(AlmTrace{k + 1, sigma,
                         stopping_gap(u.dual, u.primal, anchors, sigma, S, hp),
                         res, sr.newton_iters, sr.pcg_iters_total});
    }
  }

  rep.converged = converged;
  rep.residuals = res;
  rep.primal_objective = primal_objective(state.Theta, state.Z, state.V, S, hp);
  rep.dual_objective = dual_objective(state.Y, state.Omega, state.Lambda, hp);
  rep.estimated_hubs = make_graph_estimate(state.Theta).hubs;
  rep.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return {std::move(state), std::move(rep)};
}

std::pair<SolverState, SolveReport> two_phase_solve(const SymMatrix& S,
                                                    const Hyperparams& hp,
                                                    const TwoPhaseOptions& opts) {
  DadmmOptions d = opts.dadmm;
  d.tol = opts.switch_tol;
  d.max_iter = opts.phase1_max_iter;
  auto [state1, rep1] = dadmm_solve(S, hp, d);

  AlmConfig a = opts.alm;
  a.tol = opts.tol;
  a.sigma0 = state1.sigma;
  auto [state2, rep2] = alm_solve(S, hp, std::move(state1), a, opts.ssn);

  SolveReport rep = rep2;
  rep.solver = "two-phase";
  rep.phase1_iters = rep1.phase1_iters;
  rep.seconds = rep1.seconds + rep2.seconds;
  return {std::move(state2), std::move(rep)};
}

}  // namespace dhgl
