#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dhgl/types.hpp"

namespace dhgl {

/// Deterministic generator: mt19937_64 with explicit transforms (53-bit
/// uniforms, Box-Muller normals, rejection-sampled integers) so identical
/// seeds give identical streams on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return double(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (pairs cached).
  double normal();

  /// Uniform integer in [0, n), rejection sampling.
  std::uint64_t integer(std::uint64_t n);

  /// First k entries of a seeded shuffle of 0..n-1.
  std::vector<Index> sample_without_replacement(Index n, Index k);

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct AdjacencyGraph {
  Eigen::MatrixXi A;
  std::vector<Index> hubs;  // 0-based
};

/// Single network with planted hubs: edge probability 0.7 when either
/// endpoint is a hub, 0.02 otherwise; symmetric, zero diagonal.
AdjacencyGraph gen_setup1(Index p, Index num_hubs, std::uint64_t seed);

/// Two disconnected blocks, each built like setup 1 with the hubs split
/// across them.
AdjacencyGraph gen_setup2(Index p, Index num_hubs, std::uint64_t seed);

/// Scale-free network: degrees drawn with Prob(k) proportional to k^-alpha
/// on [1, p-1], wired by a configuration model with self-loops and
/// multi-edges discarded. Hubs are read off afterwards as nodes with more
/// than p/5 realized edges (may be empty for small p).
AdjacencyGraph gen_setup3(Index p, double alpha, std::uint64_t seed);

/// Edge weights uniform on [-0.75,-0.25] u [0.25,0.75] (independently for
/// both orientations), symmetrized by averaging, then shifted so the
/// smallest eigenvalue equals 0.1.
SymMatrix adjacency_to_precision(const Eigen::MatrixXi& A, std::uint64_t seed);

enum class CovDivisor { N, NMinus1 };

struct Sample {
  Matrix X;    // n x p, centered, unit sample sd per column
  SymMatrix S; // empirical covariance of the standardized data
};

/// Gaussian rows with covariance inverse(Sigma_inv), then columns centered
/// and scaled to unit sample standard deviation (divisor selectable,
/// matching the covariance normalization).
Sample sample_and_standardize(const SymMatrix& Sigma_inv, Index n,
                              std::uint64_t seed,
                              CovDivisor div = CovDivisor::N);

struct SyntheticInstance {
  int setup = 1;
  Index p = 0, n = 0;
  Index num_hubs = 0;   // requested (setups 1-2)
  double alpha = 2.5;   // setup 3
  std::uint64_t seed = 0;
  Eigen::MatrixXi A;
  SymMatrix Sigma_inv;
  Matrix X;
  SymMatrix S;
  std::vector<Index> true_hubs;
};

SyntheticInstance generate_instance(int setup, Index p, Index n,
                                    Index num_hubs, double alpha,
                                    std::uint64_t seed,
                                    CovDivisor div = CovDivisor::N);

/// Hub-count presets for the benchmark problem sizes
/// (p = 300, 500, 800, 1000, 1500, 2000, 2500 -> 5, 5, 10, 10, 30, 30, 30).
Index default_hub_count(Index p);

}  // namespace dhgl
