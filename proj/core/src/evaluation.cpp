#include "dhgl/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dhgl {

Eigen::MatrixXi threshold_support(const SymMatrix& Theta_hat, double epsilon) {
  const Index p = Theta_hat.dim();
  Eigen::MatrixXi sup = Eigen::MatrixXi::Zero(p, p);
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < p; ++i) {
      if (i != j && std::abs(Theta_hat(i, j)) > epsilon) sup(i, j) = 1;
    }
  }
  return sup;
}

std::vector<Index> identify_hubs(const Eigen::MatrixXi& support, Index r) {
  std::vector<Index> hubs;
  for (Index i = 0; i < support.rows(); ++i) {
    if (support.row(i).sum() > r) hubs.push_back(i);
  }
  return hubs;
}

long correct_edges(const Eigen::MatrixXi& support,
                   const SymMatrix& Sigma_inv) {
  long count = 0;
  const Index p = support.rows();
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < j; ++i) {
      if (support(i, j) != 0 && Sigma_inv(i, j) != 0.0) ++count;
    }
  }
  return count;
}

double hub_node_proportion(const std::vector<Index>& est_hubs,
                           const std::vector<Index>& true_hubs) {
  if (true_hubs.empty()) return std::numeric_limits<double>::quiet_NaN();
  long hit = 0;
  for (Index h : true_hubs) {
    if (std::find(est_hubs.begin(), est_hubs.end(), h) != est_hubs.end()) {
      ++hit;
    }
  }
  return double(hit) / double(true_hubs.size());
}

double hub_edge_proportion(const Eigen::MatrixXi& support,
                           const SymMatrix& Sigma_inv,
                           const std::vector<Index>& true_hubs) {
  long num = 0, den = 0;
  const Index p = support.rows();
  for (Index j : true_hubs) {
    for (Index jp = 0; jp < p; ++jp) {
      if (jp == j) continue;
      if (Sigma_inv(j, jp) != 0.0) {
        ++den;
        if (support(j, jp) != 0) ++num;
      }
    }
  }
  if (den == 0) return std::numeric_limits<double>::quiet_NaN();
  return double(num) / double(den);
}

double mse_offdiag(const SymMatrix& Theta_hat, const SymMatrix& Sigma_inv) {
  const Index p = Theta_hat.dim();
  double s = 0.0;
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < j; ++i) {
      const double d = Theta_hat(i, j) - Sigma_inv(i, j);
      s += d * d;
    }
  }
  return s / (double(p) * double(p - 1));
}

GraphEstimate make_graph_estimate(SymMatrix Theta, double epsilon, Index r) {
  GraphEstimate g;
  g.epsilon = epsilon;
  g.r = r < 0 ? default_hub_degree(Theta.dim()) : r;
  g.support = threshold_support(Theta, epsilon);
  g.hubs = identify_hubs(g.support, g.r);
  g.Theta = std::move(Theta);
  return g;
}

}  // namespace dhgl
