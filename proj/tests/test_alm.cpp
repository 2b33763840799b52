#include <doctest.h>

#include <cmath>
#include <vector>

#include "dhgl/alm.hpp"
#include "dhgl/tuning.hpp"
#include "oracles.hpp"

using namespace dhgl;

namespace {

SymMatrix random_cov(Rng& rng, Index p) {
  Matrix X = oracle::random_matrix(rng, 4 * p, p);
  Matrix C = X.rowwise() - X.colwise().mean();
  return SymMatrix(Matrix((C.transpose() * C) / double(4 * p)));
}

Anchors random_anchors(Rng& rng, Index p) {
  Anchors a;
  a.theta = oracle::random_sym(rng, p).mat() + 3.0 * Matrix::Identity(p, p);
  a.z = oracle::random_sym(rng, p).mat();
  a.v = oracle::random_matrix(rng, p, p, 0.5);
  return a;
}

}  // namespace

TEST_CASE("phi is strictly convex and decreases along the negative gradient") {
  Rng rng(131);
  const Index p = 7;
  SymMatrix S = random_cov(rng, p);
  Hyperparams hp(p, 0.3, 0.25, 0.5, 0.1, 0.25, {1});
  Anchors a = random_anchors(rng, p);
  const double sigma = 1.7;
  AlmSubproblem sub(S, a, sigma, hp);

  for (int rep = 0; rep < 10; ++rep) {
    Matrix y1 = oracle::random_sym(rng, p).mat();
    Matrix y2 = oracle::random_sym(rng, p).mat();
    const double mid = sub.value(0.5 * (y1 + y2));
    CHECK(mid < 0.5 * (sub.value(y1) + sub.value(y2)) + 1e-12);
  }

  Matrix y = oracle::random_sym(rng, p).mat();
  auto e = sub.eval(y);
  CHECK(sub.value(y - 1e-4 * e.grad) < e.value);
}

TEST_CASE("phi equals the partially minimized augmented Lagrangian") {
  Rng rng(137);
  const Index p = 6;
  SymMatrix S = random_cov(rng, p);
  Hyperparams hp(p, 0.35, 0.3, 0.6, 0.15, 0.3, {0, 4});
  Anchors a = random_anchors(rng, p);
  for (double sigma : {0.5, 1.0, 4.0}) {
    AlmSubproblem sub(S, a, sigma, hp);
    for (int rep = 0; rep < 5; ++rep) {
      Matrix y = oracle::random_sym(rng, p).mat();
      auto e = sub.eval(y);
      auto u = sub.updates(y, e);
      const double f = dual_aug_lagrangian(u.dual, a, sigma, S, hp);
      CHECK(e.value == doctest::Approx(f).epsilon(1e-10));
    }
  }
}

TEST_CASE("phi gradient matches central finite differences") {
  Rng rng(139);
  const Index p = 6;
  SymMatrix S = random_cov(rng, p);
  Hyperparams hp(p, 0.3, 0.25, 0.5, 0.1, 0.25, {2});
  Anchors a = random_anchors(rng, p);
  const double sigma = 1.3;
  AlmSubproblem sub(S, a, sigma, hp);

  Matrix y = oracle::random_sym(rng, p).mat();
  auto e = sub.eval(y);
  const double t = 1e-5;
  for (int rep = 0; rep < 20; ++rep) {
    Matrix H = oracle::random_sym(rng, p).mat();
    H /= H.norm();
    const double fd = (sub.value(y + t * H) - sub.value(y - t * H)) / (2.0 * t);
    const double an = e.grad.cwiseProduct(H).sum();
    CHECK(std::abs(fd - an) <= 1e-6 * (1.0 + std::abs(an)));
  }

  // Degenerate smoke data: zero covariance, identity-ish anchors.
  Anchors a0;
  a0.theta = Matrix::Identity(p, p);
  a0.z = Matrix::Identity(p, p);
  a0.v = Matrix::Zero(p, p);
  AlmSubproblem sub0(SymMatrix::Zero(p), a0, 1.0, hp);
  auto e0 = sub0.eval(Matrix::Zero(p, p));
  CHECK(e0.grad.allFinite());
  CHECK((e0.grad - e0.grad.transpose()).norm() <= 1e-12);
}

TEST_CASE("newton operator matches finite differences of the gradient") {
  Rng rng(149);
  const Index p = 6;
  SymMatrix S = random_cov(rng, p);
  Hyperparams hp(p, 0.3, 0.25, 0.5, 0.25, 0.5, {});
  Anchors a = random_anchors(rng, p);
  const double sigma = 1.1;
  AlmSubproblem sub(S, a, sigma, hp);

  Matrix y = oracle::random_sym(rng, p).mat();
  auto e = sub.eval(y);
  auto jld = logdet_prox_deriv(e.eigA, sigma);
  auto jq = edge_l1_jacobian(SymMatrix::FromExact(sigma * y + a.z),
                             sigma * hp.lambda1());
  auto jr = col_sparse_group_jacobian(2.0 * sigma * y + a.v, e.proxPsi, hp,
                                      sigma);
  NewtonOperator W{&jld, &jq, &jr, sigma};

  const double t = 1e-6;
  for (int rep = 0; rep < 10; ++rep) {
    Matrix H = oracle::random_sym(rng, p).mat();
    H /= H.norm();
    Matrix fd = (sub.eval(y + t * H).grad - sub.eval(y - t * H).grad) /
                (2.0 * t);
    Matrix an = W.apply(H);
    CHECK((fd - an).norm() <= 1e-4 * (1.0 + an.norm()));
  }
}

TEST_CASE("pcg building blocks") {
  // Identity operator returns the rhs in one iteration.
  Rng rng(151);
  Matrix rhs = oracle::random_sym(rng, 5).mat();
  auto ident = [](const Matrix& H) { return H; };
  auto r1 = pcg(ident, rhs, Matrix::Ones(5, 5), 1e-12, 100);
  CHECK(r1.converged);
  CHECK(r1.iters == 1);
  CHECK((r1.x - rhs).norm() <= 1e-12);

  // Diagonal operator with its own diagonal as preconditioner: one step.
  Matrix D = Matrix::Constant(5, 5, 1.0) +
             oracle::random_sym(rng, 5).mat().cwiseAbs();
  D = 0.5 * (D + D.transpose()).eval();
  auto diag_op = [&D](const Matrix& H) { return D.cwiseProduct(H).eval(); };
  auto r2 = pcg(diag_op, rhs, D, 1e-12, 100);
  CHECK(r2.converged);
  CHECK(r2.iters == 1);
  CHECK((D.cwiseProduct(r2.x) - rhs).norm() <= 1e-10);

  // Random SPD operator on S^p (p = 10): agree with a dense solve.
  const Index p = 10;
  const Index dim = p * (p + 1) / 2;
  Matrix G = oracle::random_matrix(rng, dim, dim);
  Matrix A = G * G.transpose() + double(dim) * Matrix::Identity(dim, dim);
  // Pack/unpack between S^p and the upper-triangle coordinate vector.
  auto pack = [&](const Matrix& H) {
    Vector v(dim);
    Index k = 0;
    for (Index j = 0; j < p; ++j) {
      for (Index i = 0; i <= j; ++i) {
        v(k++) = (i == j) ? H(i, j) : std::sqrt(2.0) * H(i, j);
      }
    }
    return v;
  };
  auto unpack = [&](const Vector& v) {
    Matrix H(p, p);
    Index k = 0;
    for (Index j = 0; j < p; ++j) {
      for (Index i = 0; i <= j; ++i) {
        const double x = v(k++);
        if (i == j) {
          H(i, j) = x;
        } else {
          H(i, j) = H(j, i) = x / std::sqrt(2.0);
        }
      }
    }
    return H;
  };
  auto op = [&](const Matrix& H) { return unpack(A * pack(H)); };
  Matrix rhs10 = oracle::random_sym(rng, p).mat();
  auto r3 = pcg(op, rhs10, Matrix::Ones(p, p), 1e-10, 2000);
  CHECK(r3.converged);
  Vector dense = A.ldlt().solve(pack(rhs10));
  CHECK((pack(r3.x) - dense).norm() <= 1e-8 * (1.0 + dense.norm()));
}

TEST_CASE("ssn converges in a few steps when the proxes are affine") {
  Rng rng(157);
  const Index p = 6;
  SymMatrix S = random_cov(rng, p);
  Hyperparams hp(p, 0.0, 0.0, 0.0, 0.0, 0.0, {});  // no thresholds anywhere
  Anchors a;
  a.theta = 2.0 * Matrix::Identity(p, p);
  a.z = Matrix::Zero(p, p);
  a.v = Matrix::Zero(p, p);
  AlmSubproblem sub(S, a, 1.0, hp);

  SsnConfig cfg;
  SsnResult warm = ssn_solve(sub, Matrix::Zero(p, p), cfg, 1e-6);
  CHECK(warm.eval.grad.norm() <= 1e-6);

  // From inside the quadratic basin the iteration needs very few steps.
  Rng rng2(158);
  Matrix Y0 = warm.Y + 1e-3 * oracle::random_sym(rng2, p).mat();
  SsnResult r = ssn_solve(sub, Y0, cfg, 1e-6);
  CHECK(r.eval.grad.norm() <= 1e-6);
  CHECK(r.newton_iters <= 3);
}

TEST_CASE("ssn monotone decrease, late unit steps and pcg tolerances") {
  Rng rng(163);
  const Index p = 10;
  SymMatrix S = random_cov(rng, p);
  Hyperparams hp(p, 0.3, 0.25, 0.5, 0.1, 0.25, {3});
  Anchors a = random_anchors(rng, p);
  AlmSubproblem sub(S, a, 2.0, hp);

  std::vector<SsnTrace> log;
  SsnConfig cfg;
  cfg.trace = [&](const SsnTrace& t) { log.push_back(t); };
  SsnResult r = ssn_solve(sub, oracle::random_sym(rng, p).mat(), cfg, 1e-6);
  CHECK(r.eval.grad.norm() <= 1e-6);
  REQUIRE(log.size() >= 2);
  for (std::size_t i = 1; i < log.size(); ++i) {
    CHECK(log[i].phi <= log[i - 1].phi);  // Armijo forbids any increase
    if (log[i - 1].grad_norm > 1e-5) {
      CHECK(log[i].phi < log[i - 1].phi);  // strict while above fp floor
    }
  }
  for (const auto& t : log) {
    CHECK(t.pcg_resid <= t.pcg_tol + 1e-15);
  }
  CHECK(log.back().step == 1.0);  // superlinear phase accepts unit steps
}

TEST_CASE("stopping gap: zero at the saddle point, nonnegative nearby") {
  Vector d(3);
  d << 1.0, 2.0, 0.5;
  SymMatrix S{Matrix(d.asDiagonal())};
  Hyperparams hp(3, 0.4, 0.3, 0.6, 0.3, 0.6, {});
  const double sigma = 1.9;

  Anchors a;
  a.theta = Vector(d.cwiseInverse()).asDiagonal();
  a.z = a.theta;
  a.v = Matrix::Zero(3, 3);

  DualPoint xd;
  xd.Y = SymMatrix::Zero(3);
  xd.Omega = S;
  xd.Gamma = SymMatrix::Zero(3);
  xd.Lambda = Matrix::Zero(3, 3);
  PrimalPoint xp;
  xp.Theta = SymMatrix(Matrix(a.theta));
  xp.Z = xp.Theta;
  xp.V = Matrix::Zero(3, 3);

  CHECK(std::abs(stopping_gap(xd, xp, a, sigma, S, hp)) <= 1e-8);

  // The subproblem path produces nonnegative gaps.
  Rng rng(167);
  AlmSubproblem sub(S, a, sigma, hp);
  for (int rep = 0; rep < 10; ++rep) {
    Matrix y = 0.3 * oracle::random_sym(rng, 3).mat();
    auto e = sub.eval(y);
    auto u = sub.updates(y, e);
    CHECK(stopping_gap(u.dual, u.primal, a, sigma, S, hp) >= -1e-10);
  }
}

TEST_CASE("alm doubles sigma and keeps the multiplier identity bit-exact") {
  Rng rng(173);
  const Index p = 12;
  SymMatrix S = random_cov(rng, p);
  Hyperparams hp(p, 0.3, 0.25, 0.5, 0.25, 0.5, {});

  // One outer step done by hand through the public pieces.
  SolverState st = SolverState::initial(p);
  const double sigma = 1.0;
  Anchors a{st.Theta.mat(), st.Z.mat(), st.V};
  AlmSubproblem sub(S, a, sigma, hp);
  SsnConfig scfg;
  SsnResult sr = ssn_solve(sub, st.Y.mat(), scfg, 1e-8);
  auto u = sub.updates(sr.Y, sr.eval);
  const Matrix lhs = u.primal.Theta.mat();
  const Matrix rhs =
      a.theta - sigma * (S.mat() - u.dual.Omega.mat() + sr.Y);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
  const Matrix vlhs = u.primal.V;
  const Matrix vrhs = a.v - sigma * (u.dual.Lambda - 2.0 * sr.Y);
  CHECK((vlhs - vrhs).cwiseAbs().maxCoeff() == 0.0);

  // Full solve: sigma snapshots across outer iterations double exactly.
  std::vector<double> sigmas;
  std::vector<double> gaps;
  AlmConfig cfg;
  cfg.tol = 1e-6;
  cfg.trace = [&](const AlmTrace& t) {
    sigmas.push_back(t.sigma);
    gaps.push_back(t.gap);
  };
  auto [state, rep] = alm_solve(S, hp, SolverState::initial(p), cfg);
  CHECK(rep.converged);
  CHECK(rep.residuals.max_residual() < 1e-6);
  CHECK(rep.phase2_outer <= 40);
  REQUIRE(!sigmas.empty());
  for (std::size_t k = 0; k < sigmas.size(); ++k) {
    CHECK(sigmas[k] == doctest::Approx(std::pow(2.0, double(k))));
  }
  CHECK(state.sigma == doctest::Approx(std::pow(2.0, double(sigmas.size()))));
  for (double g : gaps) CHECK(g >= -1e-10);
}

TEST_CASE("two-phase report, cross-solver agreement and strong duality") {
  Rng rng(179);
  const Index p = 20;
  SymMatrix S = random_cov(rng, p);
  Hyperparams hp(p, 0.3, 0.2, 0.4, 0.1, 0.2, {0, 7});

  TwoPhaseOptions opts;
  auto [st_t, rep_t] = two_phase_solve(S, hp, opts);
  CHECK(rep_t.converged);
  CHECK(rep_t.solver == "two-phase");
  CHECK(rep_t.phase1_iters <= 200);
  CHECK(rep_t.phase2_outer > 0);
  CHECK(rep_t.phase2_inner >= rep_t.phase2_outer - 1);
  CHECK(rep_t.residuals.max_residual() < 1e-6);

  DadmmOptions dopts;
  dopts.tol = 1e-6;
  auto [st_d, rep_d] = dadmm_solve(S, hp, dopts);
  CHECK(rep_d.converged);

  const double agree = (st_t.Theta.mat() - st_d.Theta.mat()).norm() /
                       (1.0 + st_d.Theta.mat().norm());
  CHECK(agree <= 1e-4);

  for (const SolveReport& rep : {rep_t, rep_d}) {
    CHECK(std::isfinite(rep.primal_objective));
    CHECK(std::isfinite(rep.dual_objective));
    CHECK(std::abs(rep.primal_objective - rep.dual_objective) <=
          1e-5 * (1.0 + std::abs(rep.primal_objective)));
  }
}

TEST_CASE("objective values: identity instance and weak duality") {
  const Index p = 2;
  Hyperparams hp(p, 0.4, 0.3, 0.6, 0.3, 0.6, {});
  SymMatrix I = SymMatrix::Identity(p);
  const Matrix zero = Matrix::Zero(p, p);

  CHECK(primal_objective(I, I, zero, I, hp) == doctest::Approx(2.0));
  CHECK(dual_objective(SymMatrix::Zero(p), I, zero, hp) ==
        doctest::Approx(2.0));

  // Conjugate of the edge penalty is the ball indicator (Fenchel-Young).
  Rng rng(181);
  SymMatrix inside(Matrix(
      prox_edge_l1_conj(oracle::random_sym(rng, 4, 2.0), 0.5, 1.0).mat()));
  for (int rep = 0; rep < 40; ++rep) {
    SymMatrix Z = oracle::random_sym(rng, 4, 3.0);
    CHECK(Z.mat().cwiseProduct(inside.mat()).sum() -
              edge_l1_value(Z, 0.5) <=
          1e-10);
  }
  Matrix outside = inside.mat();
  outside(0, 1) = outside(1, 0) = 0.5 + 0.3;  // violates the bound
  Matrix witness = Matrix::Zero(4, 4);
  witness(0, 1) = witness(1, 0) = 10.0;
  CHECK(witness.cwiseProduct(outside).sum() -
            edge_l1_value(SymMatrix(witness), 0.5) >
        1e-6);
  CHECK(dual_objective(SymMatrix(outside), SymMatrix::Identity(4),
                       Matrix::Zero(4, 4),
                       Hyperparams(4, 0.5, 1.0, 1.0, 1.0, 1.0, {})) ==
        -std::numeric_limits<double>::infinity());

  // Weak duality on sampled feasible pairs.
  Rng rng2(191);
  const Index q = 5;
  Hyperparams hpq(q, 0.4, 0.3, 0.6, 0.3, 0.6, {});
  SymMatrix Sq = SymMatrix::Identity(q);
  for (int rep = 0; rep < 20; ++rep) {
    SymMatrix Z = oracle::random_sym(rng2, q, 0.2);
    Matrix Zm = Z.mat() + 2.0 * Matrix::Identity(q, q);
    Matrix V = oracle::random_matrix(rng2, q, q, 0.05);
    SymMatrix Theta = SymMatrix::FromExact(Zm + V + V.transpose());
    const double po =
        primal_objective(Theta, SymMatrix::FromExact(Zm), V, Sq, hpq);

    SymMatrix Y(Matrix(
        prox_edge_l1_conj(oracle::random_sym(rng2, q, 0.05), hpq.lambda1(), 1.0)
            .mat()));
    SymMatrix Omega = SymMatrix::FromExact(Sq.mat() + Y.mat());
    Matrix Lambda = 2.0 * Y.mat();
    const double dob = dual_objective(Y, Omega, Lambda, hpq);
    if (std::isfinite(po) && std::isfinite(dob)) {
      CHECK(dob <= po + 1e-9);
    }
  }
}

TEST_CASE("ssn configuration validation") {
  Rng rng(193);
  const Index p = 4;
  SymMatrix S = random_cov(rng, p);
  Hyperparams hp(p, 0.1, 0.1, 0.2, 0.1, 0.2, {});
  Anchors a = random_anchors(rng, p);
  AlmSubproblem sub(S, a, 1.0, hp);
  SsnConfig bad;
  bad.mu = 0.7;
  CHECK_THROWS_AS(ssn_solve(sub, Matrix::Zero(p, p), bad, 1e-6),
                  std::invalid_argument);
  CHECK_THROWS_AS(AlmSubproblem(S, a, -1.0, hp), std::invalid_argument);
}
