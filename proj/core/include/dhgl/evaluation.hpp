#pragma once

#include <vector>

#include "dhgl/types.hpp"

namespace dhgl {

/// 0/1 off-diagonal support pattern: 1 iff |Theta_ij| > epsilon and i != j.
Eigen::MatrixXi threshold_support(const SymMatrix& Theta_hat, double epsilon);

/// Nodes whose off-diagonal support degree strictly exceeds r.
std::vector<Index> identify_hubs(const Eigen::MatrixXi& support, Index r);

/// Default hub degree cut: floor(p / 5).
inline Index default_hub_degree(Index p) { return p / 5; }

/// (a) Number of correctly estimated edges: pairs j < j' present in both the
/// thresholded estimate and the true precision pattern.
long correct_edges(const Eigen::MatrixXi& support, const SymMatrix& Sigma_inv);

/// (b) |estimated hubs ∩ true hubs| / |true hubs|; NaN when no true hubs.
double hub_node_proportion(const std::vector<Index>& est_hubs,
                           const std::vector<Index>& true_hubs);

/// (c) Recovered fraction of true edges incident to true hubs (ordered pairs
/// j in hubs, j' != j); NaN when the true hub rows carry no edges.
double hub_edge_proportion(const Eigen::MatrixXi& support,
                           const SymMatrix& Sigma_inv,
                           const std::vector<Index>& true_hubs);

/// (d) sum_{j<j'} (Theta_jj' - Sigma_inv_jj')^2 / (p(p-1)).
/// The denominator counts ordered pairs although the sum runs over j < j';
/// kept as printed so numbers are comparable across implementations.
double mse_offdiag(const SymMatrix& Theta_hat, const SymMatrix& Sigma_inv);

/// Thresholded estimate bundle.
struct GraphEstimate {
  SymMatrix Theta;
  double epsilon = 1e-5;
  Index r = 0;
  Eigen::MatrixXi support;
  std::vector<Index> hubs;
};

/// r < 0 selects the default cut floor(p/5).
GraphEstimate make_graph_estimate(SymMatrix Theta, double epsilon = 1e-5,
                                  Index r = -1);

}  // namespace dhgl
