#include <benchmark/benchmark.h>

#include "dhgl/datagen.hpp"
#include "dhgl/prox.hpp"

using namespace dhgl;

namespace {

SymMatrix random_sym(Index p, std::uint64_t seed) {
  Rng rng(seed);
  Matrix M(p, p);
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < p; ++i) M(i, j) = rng.normal();
  }
  return SymMatrix::FromExact(0.5 * (M + M.transpose()));
}

Matrix random_gen(Index p, std::uint64_t seed) {
  Rng rng(seed);
  Matrix M(p, p);
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < p; ++i) M(i, j) = rng.normal();
  }
  return M;
}

}  // namespace

static void BM_PdSplitPos(benchmark::State& state) {
  const Index p = state.range(0);
  SymMatrix X = random_sym(p, 1);
  for (auto _ : state) {
    auto R = pd_split_pos(X, 1.0);
    benchmark::DoNotOptimize(R);
  }
  state.SetComplexityN(p);
}
BENCHMARK(BM_PdSplitPos)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

static void BM_ProxEdgeL1(benchmark::State& state) {
  const Index p = state.range(0);
  SymMatrix Y = random_sym(p, 2);
  for (auto _ : state) {
    auto R = prox_edge_l1(Y, 0.4, 1.3);
    benchmark::DoNotOptimize(R);
  }
}
BENCHMARK(BM_ProxEdgeL1)->RangeMultiplier(4)->Range(64, 2048);

static void BM_ProxColSparseGroup(benchmark::State& state) {
  const Index p = state.range(0);
  Hyperparams hp(p, 0.4, 0.3, 1.0, 0.1, 0.5, {0, 1, 2});
  Matrix Y = random_gen(p, 3);
  for (auto _ : state) {
    auto R = prox_col_sparse_group(Y, hp, 1.3);
    benchmark::DoNotOptimize(R);
  }
}
BENCHMARK(BM_ProxColSparseGroup)->RangeMultiplier(4)->Range(64, 2048);

static void BM_ProxConjColumnPenalty(benchmark::State& state) {
  const Index p = state.range(0);
  Hyperparams hp(p, 0.4, 0.3, 1.0, 0.1, 0.5, {0, 1, 2});
  Matrix Y = random_gen(p, 4);
  for (auto _ : state) {
    auto R = prox_col_sparse_group_conj(Y, hp, 2.0);
    benchmark::DoNotOptimize(R);
  }
}
BENCHMARK(BM_ProxConjColumnPenalty)->RangeMultiplier(4)->Range(64, 2048);

BENCHMARK_MAIN();
