#include <benchmark/benchmark.h>

#include "dhgl/alm.hpp"
#include "dhgl/dadmm.hpp"
#include "dhgl/datagen.hpp"
#include "dhgl/jacobian.hpp"

using namespace dhgl;

namespace {

SyntheticInstance instance(Index p) {
  return generate_instance(1, p, p / 2, std::max<Index>(2, p / 60), 2.5, 7);
}

}  // namespace

static void BM_DadmmStep(benchmark::State& state) {
  const Index p = state.range(0);
  SyntheticInstance inst = instance(p);
  Hyperparams hp = Hyperparams::hgl(p, 0.4, 0.3, 1.0);
  SolverState st = SolverState::initial(p);
  for (auto _ : state) {
    dadmm_step(st, inst.S, hp);
  }
  state.SetComplexityN(p);
}
BENCHMARK(BM_DadmmStep)->RangeMultiplier(2)->Range(64, 512)->Complexity();

static void BM_KktResiduals(benchmark::State& state) {
  const Index p = state.range(0);
  SyntheticInstance inst = instance(p);
  Hyperparams hp = Hyperparams::hgl(p, 0.4, 0.3, 1.0);
  SolverState st = SolverState::initial(p);
  for (int i = 0; i < 5; ++i) dadmm_step(st, inst.S, hp);
  for (auto _ : state) {
    auto r = kkt_residuals(st, inst.S, hp);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_KktResiduals)->RangeMultiplier(2)->Range(64, 512);

static void BM_NewtonApply(benchmark::State& state) {
  const Index p = state.range(0);
  SyntheticInstance inst = instance(p);
  Hyperparams hp = Hyperparams::hgl(p, 0.4, 0.3, 1.0);
  const double sigma = 2.0;
  Anchors a{Matrix::Identity(p, p), Matrix::Zero(p, p), Matrix::Zero(p, p)};
  AlmSubproblem sub(inst.S, a, sigma, hp);
  Matrix Y = Matrix::Zero(p, p);
  auto e = sub.eval(Y);
  auto jld = logdet_prox_deriv(e.eigA, sigma);
  auto jq = edge_l1_jacobian(SymMatrix::FromExact(sigma * Y + a.z),
                             sigma * hp.lambda1());
  auto jr =
      col_sparse_group_jacobian(2.0 * sigma * Y + a.v, e.proxPsi, hp, sigma);
  NewtonOperator W{&jld, &jq, &jr, sigma};
  Matrix H = Matrix::Identity(p, p);
  for (auto _ : state) {
    H = W.apply(H);
    H /= H.norm();
    benchmark::DoNotOptimize(H);
  }
  state.SetComplexityN(p);
}
BENCHMARK(BM_NewtonApply)->RangeMultiplier(2)->Range(64, 512)->Complexity();

static void BM_TwoPhaseSolve(benchmark::State& state) {
  const Index p = state.range(0);
  SyntheticInstance inst = instance(p);
  Hyperparams hp = Hyperparams::hgl(p, 0.4, 0.3, 1.0);
  for (auto _ : state) {
    TwoPhaseOptions opts;
    opts.tol = 1e-6;
    auto out = two_phase_solve(inst.S, hp, opts);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_TwoPhaseSolve)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
