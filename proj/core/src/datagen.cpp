#include "dhgl/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dhgl/linalg.hpp"

namespace dhgl {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

std::uint64_t Rng::integer(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::integer: n must be positive");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = gen_();
  } while (x >= limit);
  return x % n;
}

std::vector<Index> Rng::sample_without_replacement(Index n, Index k) {
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  for (Index i = 0; i < k; ++i) {
    const Index j = i + Index(integer(std::uint64_t(n - i)));
    std::swap(idx[std::size_t(i)], idx[std::size_t(j)]);
  }
  idx.resize(std::size_t(k));
  return idx;
}

namespace {

AdjacencyGraph planted_hub_graph(Index p, Index num_hubs, Rng& rng) {
  AdjacencyGraph g;
  g.hubs = rng.sample_without_replacement(p, num_hubs);
  std::sort(g.hubs.begin(), g.hubs.end());
  std::vector<char> is_hub(std::size_t(p), 0);
  for (Index h : g.hubs) is_hub[std::size_t(h)] = 1;

  g.A = Eigen::MatrixXi::Zero(p, p);
  for (Index i = 0; i < p; ++i) {
    for (Index j = i + 1; j < p; ++j) {
      const double prob =
          (is_hub[std::size_t(i)] || is_hub[std::size_t(j)]) ? 0.7 : 0.02;
      if (rng.uniform() < prob) {
        g.A(i, j) = 1;
        g.A(j, i) = 1;
      }
    }
  }
  return g;
}

}  // namespace

AdjacencyGraph gen_setup1(Index p, Index num_hubs, std::uint64_t seed) {
  if (num_hubs <= 0 || num_hubs >= p) {
    throw std::invalid_argument("gen_setup1: need 0 < num_hubs < p");
  }
  Rng rng(seed);
  return planted_hub_graph(p, num_hubs, rng);
}

AdjacencyGraph gen_setup2(Index p, Index num_hubs, std::uint64_t seed) {
  if (num_hubs <= 0 || num_hubs >= p) {
    throw std::invalid_argument("gen_setup2: need 0 < num_hubs < p");
  }
  const Index p1 = (p + 1) / 2;
  const Index p2 = p - p1;
  const Index h1 = (num_hubs + 1) / 2;
  const Index h2 = num_hubs - h1;
  if (h1 >= p1 || (h2 > 0 && h2 >= p2)) {
    throw std::invalid_argument("gen_setup2: too many hubs per block");
  }
  Rng seeder(seed);
  const std::uint64_t s1 = seeder.raw();
  const std::uint64_t s2 = seeder.raw();

  Rng r1(s1), r2(s2);
  AdjacencyGraph b1 = planted_hub_graph(p1, h1, r1);
  AdjacencyGraph g;
  g.A = Eigen::MatrixXi::Zero(p, p);
  g.A.topLeftCorner(p1, p1) = b1.A;
  g.hubs = b1.hubs;
  if (h2 > 0) {
    AdjacencyGraph b2 = planted_hub_graph(p2, h2, r2);
    g.A.bottomRightCorner(p2, p2) = b2.A;
    for (Index h : b2.hubs) g.hubs.push_back(h + p1);
  }
  std::sort(g.hubs.begin(), g.hubs.end());
  return g;
}

AdjacencyGraph gen_setup3(Index p, double alpha, std::uint64_t seed) {
  if (!(alpha > 1.0)) {
    throw std::invalid_argument("gen_setup3: alpha must exceed 1");
  }
  Rng rng(seed);

  // Inverse-CDF table for Prob(degree = k) proportional to k^-alpha,
  // truncated to [1, p-1].
  std::vector<double> cdf(std::size_t(p - 1));
  double total = 0.0;
  for (Index k = 1; k < p; ++k) {
    total += std::pow(double(k), -alpha);
    cdf[std::size_t(k - 1)] = total;
  }
  for (double& c : cdf) c /= total;

  std::vector<Index> degree(static_cast<std::size_t>(p));
  for (;;) {
    long sum = 0;
    for (Index i = 0; i < p; ++i) {
      const double u = rng.uniform();
      const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
      degree[std::size_t(i)] = Index(it - cdf.begin()) + 1;
      sum += degree[std::size_t(i)];
    }
    if (sum % 2 == 0) break;  // need an even stub count; otherwise resample
  }

  std::vector<Index> stubs;
  for (Index i = 0; i < p; ++i) {
    stubs.insert(stubs.end(), std::size_t(degree[std::size_t(i)]), i);
  }
  for (std::size_t i = stubs.size(); i > 1; --i) {
    const std::size_t j = std::size_t(rng.integer(i));
    std::swap(stubs[i - 1], stubs[j]);
  }

  AdjacencyGraph g;
  g.A = Eigen::MatrixXi::Zero(p, p);
  for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
    const Index a = stubs[k], b = stubs[k + 1];
    if (a == b) continue;
    g.A(a, b) = 1;
    g.A(b, a) = 1;
  }

  const Index r = p / 5;
  for (Index i = 0; i < p; ++i) {
    if (g.A.row(i).sum() > r) g.hubs.push_back(i);
  }
  return g;
}

SymMatrix adjacency_to_precision(const Eigen::MatrixXi& A,
                                 std::uint64_t seed) {
  const Index p = A.rows();
  Rng rng(seed);
  Matrix E = Matrix::Zero(p, p);
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < p; ++i) {
      if (i != j && A(i, j) != 0) {
        const double mag = rng.uniform(0.25, 0.75);
        E(i, j) = (rng.uniform() < 0.5) ? -mag : mag;
      }
    }
  }
  Matrix Ebar = 0.5 * (E + E.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(Ebar, Eigen::EigenvaluesOnly);
  const double shift = 0.1 - es.eigenvalues()(0);
  Ebar.diagonal().array() += shift;
  return SymMatrix::FromExact(std::move(Ebar));
}

Sample sample_and_standardize(const SymMatrix& Sigma_inv, Index n,
                              std::uint64_t seed, CovDivisor div) {
  if (n < 2) {
    throw std::invalid_argument("sample_and_standardize: need n >= 2");
  }
  const Index p = Sigma_inv.dim();
  Eigen::LLT<Matrix> llt_prec(Sigma_inv.mat());
  if (llt_prec.info() != Eigen::Success) {
    throw std::runtime_error(
        "sample_and_standardize: precision matrix is not positive definite");
  }
  Matrix Sigma = llt_prec.solve(Matrix::Identity(p, p));
  Sigma = (0.5 * (Sigma + Sigma.transpose())).eval();
  Eigen::LLT<Matrix> llt_cov(Sigma);
  if (llt_cov.info() != Eigen::Success) {
    throw std::runtime_error(
        "sample_and_standardize: covariance factorization failed");
  }
  const Matrix L = llt_cov.matrixL();

  Rng rng(seed);
  Matrix X(n, p);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < p; ++j) X(i, j) = rng.normal();
  }
  X = (X * L.transpose()).eval();

  const double divisor = (div == CovDivisor::N) ? double(n) : double(n - 1);
  for (Index j = 0; j < p; ++j) {
    const double mean = X.col(j).mean();
    X.col(j).array() -= mean;
    const double sd = std::sqrt(X.col(j).squaredNorm() / divisor);
    X.col(j) /= sd;
  }

  Sample out;
  out.S = SymMatrix::FromExact(((X.transpose() * X) / divisor).eval());
  out.X = std::move(X);
  return out;
}

SyntheticInstance generate_instance(int setup, Index p, Index n,
                                    Index num_hubs, double alpha,
                                    std::uint64_t seed, CovDivisor div) {
  SyntheticInstance inst;
  inst.setup = setup;
  inst.p = p;
  inst.n = n;
  inst.num_hubs = num_hubs;
  inst.alpha = alpha;
  inst.seed = seed;

  Rng seeder(seed);
  const std::uint64_t graph_seed = seeder.raw();
  const std::uint64_t weight_seed = seeder.raw();
  const std::uint64_t sample_seed = seeder.raw();

  AdjacencyGraph g;
  switch (setup) {
    case 1: g = gen_setup1(p, num_hubs, graph_seed); break;
    case 2: g = gen_setup2(p, num_hubs, graph_seed); break;
    case 3: g = gen_setup3(p, alpha, graph_seed); break;
    default:
      throw std::invalid_argument("generate_instance: setup must be 1, 2 or 3");
  }
  inst.A = std::move(g.A);
  inst.true_hubs = std::move(g.hubs);
  inst.Sigma_inv = adjacency_to_precision(inst.A, weight_seed);
  Sample s = sample_and_standardize(inst.Sigma_inv, n, sample_seed, div);
  inst.X = std::move(s.X);
  inst.S = std::move(s.S);
  return inst;
}

Index default_hub_count(Index p) {
  if (p <= 500) return 5;
  if (p <= 1000) return 10;
  return 30;
}

}  // namespace dhgl
