#pragma once

#include <vector>

#include "dhgl/types.hpp"

namespace dhgl {

/// Regularization weights of the hub model. lambda1 penalizes off-diagonal
/// entries of the symmetric part; lambda2/lambda3 are the elementwise/group
/// weights for ordinary columns of the hub component and lambda4/lambda5 the
/// (smaller) weights for columns in the prior hub set.
///
/// The per-column weight vectors w1 (elementwise) and w2 (group) are
/// materialized at construction; the solver hot loops index them per column.
class Hyperparams {
 public:
  Hyperparams(Index p, double lambda1, double lambda2, double lambda3,
              double lambda4, double lambda5,
              std::vector<Index> prior_hubs = {});

  /// Plain hub model (empty prior set): lambda4/lambda5 never apply.
  static Hyperparams hgl(Index p, double lambda1, double lambda2,
                         double lambda3);

  Index dim() const { return static_cast<Index>(w1_.size()); }
  double lambda1() const { return lambda1_; }
  double lambda2() const { return lambda2_; }
  double lambda3() const { return lambda3_; }
  double lambda4() const { return lambda4_; }
  double lambda5() const { return lambda5_; }
  const std::vector<Index>& prior_hubs() const { return prior_hubs_; }

  const Vector& w1() const { return w1_; }
  const Vector& w2() const { return w2_; }
  double w1(Index j) const { return w1_(j); }
  double w2(Index j) const { return w2_(j); }

  /// True when lambda2 < lambda4 or lambda3 < lambda5, i.e. the prior set is
  /// penalized harder than ordinary columns. Accepted with a warning.
  bool discount_violated() const { return discount_violated_; }

 private:
  double lambda1_, lambda2_, lambda3_, lambda4_, lambda5_;
  std::vector<Index> prior_hubs_;
  Vector w1_, w2_;
  bool discount_violated_ = false;
};

}  // namespace dhgl
