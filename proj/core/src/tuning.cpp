#include "dhgl/tuning.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "dhgl/evaluation.hpp"
#include "dhgl/prox.hpp"

namespace dhgl {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

SolverFn make_dadmm_solver(const DadmmOptions& opts) {
  return [opts](const SymMatrix& S, const Hyperparams& hp) {
    auto [state, rep] = dadmm_solve(S, hp, opts);
    return std::make_pair(std::move(state.Theta), std::move(rep));
  };
}

SolverFn make_two_phase_solver(const TwoPhaseOptions& opts) {
  return [opts](const SymMatrix& S, const Hyperparams& hp) {
    auto [state, rep] = two_phase_solve(S, hp, opts);
    return std::make_pair(std::move(state.Theta), std::move(rep));
  };
}

SymMatrix covariance(const Matrix& X, CovDivisor div) {
  const Index n = X.rows();
  if (n < 2) throw std::invalid_argument("covariance: need at least 2 rows");
  Matrix C = X.rowwise() - X.colwise().mean();
  const double divisor = (div == CovDivisor::N) ? double(n) : double(n - 1);
  Matrix S = (C.transpose() * C) / divisor;
  return SymMatrix(std::move(S));
}

double nll_score(const SymMatrix& S_val, const SymMatrix& Theta) {
  const double ld = logdet_psd(Theta);
  if (!std::isfinite(ld)) return kInf;
  return S_val.mat().cwiseProduct(Theta.mat()).sum() - ld;
}

std::vector<std::vector<Index>> kfold_partition(Index n, int k,
                                                std::uint64_t seed) {
  if (k < 2 || Index(k) > n) {
    throw std::invalid_argument("kfold_partition: need 2 <= k <= n");
  }
  Rng rng(seed);
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  for (std::size_t i = idx.size(); i > 1; --i) {
    std::swap(idx[i - 1], idx[std::size_t(rng.integer(i))]);
  }
  std::vector<std::vector<Index>> folds(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    folds[i % std::size_t(k)].push_back(idx[i]);
  }
  return folds;
}

namespace {

Matrix take_rows(const Matrix& X, const std::vector<Index>& rows) {
  Matrix R(Index(rows.size()), X.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) R.row(Index(i)) = X.row(rows[i]);
  return R;
}

}  // namespace

CvRun kfold_cv(const Matrix& X, const std::vector<Hyperparams>& candidates,
               const SolverFn& solver, int k, std::uint64_t seed, int threads,
               CovDivisor div) {
  if (candidates.empty()) {
    throw std::invalid_argument("kfold_cv: no candidates");
  }
  const Index n = X.rows();
  const auto folds = kfold_partition(n, k, seed);

  // Pre-build per-fold train/validation covariances once.
  std::vector<SymMatrix> S_train(folds.size()), S_val(folds.size());
  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<Index> train;
    for (std::size_t g = 0; g < folds.size(); ++g) {
      if (g == f) continue;
      train.insert(train.end(), folds[g].begin(), folds[g].end());
    }
    S_train[f] = covariance(take_rows(X, train), div);
    S_val[f] = covariance(take_rows(X, folds[f]), div);
  }

  CvRun run;
  run.candidates = candidates;
  run.scores = Matrix::Constant(Index(candidates.size()), Index(folds.size()),
                                kNaN);

  struct Task {
    std::size_t cand, fold;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    for (std::size_t f = 0; f < folds.size(); ++f) tasks.push_back({c, f});
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      const auto [c, f] = tasks[t];
      try {
        auto [theta, rep] = solver(S_train[f], candidates[c]);
        run.scores(Index(c), Index(f)) = nll_score(S_val[f], theta);
      } catch (const std::exception& e) {
        std::cerr << "dhgl: warning: cv solve failed (candidate " << c
                  << ", fold " << f << "): " << e.what() << "\n";
      }
    }
  };

  int nthreads = threads > 0
                     ? threads
                     : std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min<int>(nthreads, int(tasks.size()));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  run.means.assign(candidates.size(), kInf);
  bool any = false;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    double sum = 0.0;
    bool ok = true;
    for (Index f = 0; f < run.scores.cols(); ++f) {
      const double v = run.scores(Index(c), f);
      if (!std::isfinite(v)) {
        ok = false;
        break;
      }
      sum += v;
    }
    if (ok) {
      run.means[c] = sum / double(run.scores.cols());
      if (!any || run.means[c] < run.means[run.best]) run.best = c;
      any = true;
    }
  }
  if (!any) throw std::runtime_error("kfold_cv: every candidate failed");
  return run;
}

// ---------------------------------------------------------------------------
// Plain graphical lasso via the two-block dual ADMM.
// ---------------------------------------------------------------------------

std::pair<SymMatrix, SolveReport> gl_solve(const SymMatrix& S, double lambda,
                                           const DadmmOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const Index p = S.dim();
  Matrix Theta = Matrix::Identity(p, p);
  Matrix Z = Matrix::Zero(p, p);
  Matrix Y = Matrix::Zero(p, p);
  Matrix Omega = Matrix::Identity(p, p);
  Matrix Gamma = Matrix::Zero(p, p);
  double sigma = opts.sigma0;
  const double tau = opts.tau;

  SolveReport rep;
  rep.solver = "gl-dadmm";
  Residuals res;
  auto residuals = [&]() {
    Residuals r;
    r.primal = (Theta - Z).norm() / (1.0 + Theta.norm());
    r.dual = (S.mat() - Omega + Y).norm() / (1.0 + S.mat().norm());
    const double c1 = (Theta * Omega - Matrix::Identity(p, p)).norm() /
                      (1.0 + Theta.norm() + Omega.norm());
    const double c2 =
        (Z - prox_edge_l1(SymMatrix::FromExact(Y + Z), lambda, 1.0).mat())
            .norm() /
        (1.0 + Z.norm());
    r.comp = std::max(c1, c2);
    return r;
  };

  res = residuals();
  int it = 0;
  for (; it < opts.max_iter && res.max_residual() >= opts.tol; ++it) {
    Y = (Theta - Z) / (2.0 * sigma) + (Gamma - S.mat() + Omega) / 2.0;
    Omega = pd_split_pos(
        SymMatrix::FromExact(S.mat() + Y - Theta / sigma), 1.0 / sigma)
        .mat();
    Gamma = prox_edge_l1_conj(SymMatrix::FromExact(Y + Z / sigma), lambda,
                              sigma)
                .mat();
    Theta -= tau * sigma * (S.mat() - Omega + Y);
    Z -= tau * sigma * (Gamma - Y);
    res = residuals();
    if (!res.finite() || res.max_residual() > opts.divergence_threshold) {
      throw std::runtime_error("gl_solve: diverged at iteration " +
                               std::to_string(it));
    }
  }

  rep.converged = res.max_residual() < opts.tol;
  rep.residuals = res;
  rep.phase1_iters = it;
  rep.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return {SymMatrix(std::move(Theta)), std::move(rep)};
}

// ---------------------------------------------------------------------------
// Prior-construction strategies.
// ---------------------------------------------------------------------------

namespace {

struct StageOne {
  SymMatrix S_full;
  CvRun cv;
  Hyperparams hp;
  SymMatrix Theta;
  SolveReport report;
  std::vector<Index> hubs;
};

StageOne run_plain_stage(const Matrix& X, const TuneOptions& opts, int k) {
  const Index p = X.cols();
  std::vector<Hyperparams> candidates;
  for (double l2 : opts.grid.lambda2) {
    for (double l3 : opts.grid.lambda3) {
      candidates.push_back(Hyperparams::hgl(p, opts.grid.lambda1, l2, l3));
    }
  }
  CvRun cv = kfold_cv(X, candidates, opts.cv_solver, k, opts.seed,
                      opts.threads, opts.div);
  Hyperparams hp = cv.candidates[cv.best];
  SymMatrix S_full = covariance(X, opts.div);
  auto [theta, rep] = opts.final_solver(S_full, hp);
  const Index r = opts.hub_degree < 0 ? default_hub_degree(p) : opts.hub_degree;
  std::vector<Index> hubs =
      identify_hubs(threshold_support(theta, opts.hub_epsilon), r);
  return StageOne{std::move(S_full), std::move(cv), std::move(hp),
                  std::move(theta), std::move(rep), std::move(hubs)};
}

std::vector<Index> set_difference_sorted(std::vector<Index> a,
                                         std::vector<Index> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<Index> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

std::vector<Index> set_union_sorted(std::vector<Index> a,
                                    std::vector<Index> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<Index> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

}  // namespace

TuneResult dhgl_known_hubs(const Matrix& X, const std::vector<Index>& known,
                           const TuneOptions& opts) {
  const Index p = X.cols();
  const int k = opts.folds > 0 ? opts.folds : default_fold_count(p);
  StageOne s1 = run_plain_stage(X, opts, k);

  const std::vector<Index> prior = set_difference_sorted(known, s1.hubs);

  TuneResult out(s1.hp);
  out.stage1_cv = s1.cv;
  out.stage1_hubs = s1.hubs;
  out.prior = prior;
  if (prior.empty()) {
    out.Theta = std::move(s1.Theta);
    out.hubs = std::move(s1.hubs);
    out.final_report = std::move(s1.report);
    return out;
  }

  std::vector<Hyperparams> candidates;
  for (double l4 : opts.grid.lambda4) {
    for (double l5 : opts.grid.lambda5) {
      candidates.push_back(Hyperparams(p, s1.hp.lambda1(), s1.hp.lambda2(),
                                       s1.hp.lambda3(), l4, l5, prior));
    }
  }
  CvRun cv2 = kfold_cv(X, candidates, opts.cv_solver, k, opts.seed + 1,
                       opts.threads, opts.div);
  Hyperparams hp2 = cv2.candidates[cv2.best];
  auto [theta2, rep2] = opts.final_solver(s1.S_full, hp2);
  const Index r = opts.hub_degree < 0 ? default_hub_degree(p) : opts.hub_degree;
  std::vector<Index> hubs2 =
      identify_hubs(threshold_support(theta2, opts.hub_epsilon), r);

  out.hp = std::move(hp2);
  out.stage2_cv = std::move(cv2);
  out.used_prior = true;
  out.hubs = set_union_sorted(s1.hubs, hubs2);
  out.Theta = std::move(theta2);
  out.final_report = std::move(rep2);
  return out;
}

TuneResult dhgl_unknown_hubs(const Matrix& X, const TuneOptions& opts,
                             double a, double b) {
  const Index p = X.cols();
  const int k = opts.folds > 0 ? opts.folds : default_fold_count(p);
  StageOne s1 = run_plain_stage(X, opts, k);
  const Index r = opts.hub_degree < 0 ? default_hub_degree(p) : opts.hub_degree;

  // Sweep the plain graphical lasso from strong to weak regularization until
  // it proposes new hub candidates without blowing up the union.
  DadmmOptions gl_opts;
  gl_opts.tol = 1e-5;
  gl_opts.max_iter = 5000;
  std::vector<Index> gl_hubs;
  bool found = false;
  double accepted_lambda = 0.0;
  std::size_t prev_count = 0;
  for (double lam : opts.grid.gl_lambda_sweep) {
    auto [theta_gl, rep_gl] = gl_solve(s1.S_full, lam, gl_opts);
    gl_hubs = identify_hubs(threshold_support(theta_gl, opts.hub_epsilon), r);
    if (gl_hubs.size() < prev_count) {
      std::cerr << "dhgl: warning: graphical-lasso hub count decreased while "
                   "relaxing lambda (thresholding effect)\n";
    }
    prev_count = gl_hubs.size();
    const auto fresh = set_difference_sorted(gl_hubs, s1.hubs);
    const auto uni = set_union_sorted(gl_hubs, s1.hubs);
    const double cap = std::max(double(s1.hubs.size()) + a,
                                b * double(s1.hubs.size()));
    if (!fresh.empty() && double(uni.size()) <= cap) {
      found = true;
      accepted_lambda = lam;
      break;
    }
  }

  if (!found) {
    std::cerr << "dhgl: warning: graphical-lasso sweep produced no usable "
                 "prior set, returning the plain hub-model estimate\n";
    TuneResult out(s1.hp);
    out.stage1_cv = std::move(s1.cv);
    out.stage1_hubs = s1.hubs;
    out.Theta = std::move(s1.Theta);
    out.hubs = std::move(s1.hubs);
    out.final_report = std::move(s1.report);
    out.gl_sweep_failed = true;
    return out;
  }

  const std::vector<Index> prior = set_difference_sorted(gl_hubs, s1.hubs);
  std::vector<Hyperparams> candidates;
  for (double l5 : opts.grid.lambda5) {
    candidates.push_back(Hyperparams(p, s1.hp.lambda1(), s1.hp.lambda2(),
                                     s1.hp.lambda3(), s1.hp.lambda2(), l5,
                                     prior));
  }
  CvRun cv2 = kfold_cv(X, candidates, opts.cv_solver, k, opts.seed + 1,
                       opts.threads, opts.div);
  Hyperparams hp2 = cv2.candidates[cv2.best];
  auto [theta2, rep2] = opts.final_solver(s1.S_full, hp2);

  TuneResult out(hp2);
  out.stage1_cv = std::move(s1.cv);
  out.stage1_hubs = s1.hubs;
  out.stage2_cv = std::move(cv2);
  out.prior = prior;
  out.used_prior = true;
  out.gl_lambda = accepted_lambda;
  out.hubs = identify_hubs(threshold_support(theta2, opts.hub_epsilon), r);
  out.Theta = std::move(theta2);
  out.final_report = std::move(rep2);
  return out;
}

}  // namespace dhgl
