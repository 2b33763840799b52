#include "dhgl/hyperparams.hpp"

#include <algorithm>
#include <iostream>
#include <stdexcept>

namespace dhgl {

Hyperparams::Hyperparams(Index p, double lambda1, double lambda2,
                         double lambda3, double lambda4, double lambda5,
                         std::vector<Index> prior_hubs)
    : lambda1_(lambda1),
      lambda2_(lambda2),
      lambda3_(lambda3),
      lambda4_(lambda4),
      lambda5_(lambda5),
      prior_hubs_(std::move(prior_hubs)) {
  if (p <= 0) throw std::invalid_argument("Hyperparams: p must be positive");
  for (double l : {lambda1, lambda2, lambda3, lambda4, lambda5}) {
    if (!(l >= 0.0)) {
      throw std::invalid_argument("Hyperparams: lambdas must be nonnegative");
    }
  }
  std::sort(prior_hubs_.begin(), prior_hubs_.end());
  prior_hubs_.erase(std::unique(prior_hubs_.begin(), prior_hubs_.end()),
                    prior_hubs_.end());
  for (Index j : prior_hubs_) {
    if (j < 0 || j >= p) {
      throw std::invalid_argument("Hyperparams: prior hub index out of range");
    }
  }
  if (!prior_hubs_.empty() && (lambda2 < lambda4 || lambda3 < lambda5)) {
    discount_violated_ = true;
    std::cerr << "dhgl: warning: prior-hub weights (lambda4, lambda5) exceed "
                 "the ordinary weights (lambda2, lambda3); known hubs are "
                 "being penalized harder than unknown ones\n";
  }
  w1_ = Vector::Constant(p, lambda2);
  w2_ = Vector::Constant(p, lambda3);
  for (Index j : prior_hubs_) {
    w1_(j) = lambda4;
    w2_(j) = lambda5;
  }
}

Hyperparams Hyperparams::hgl(Index p, double lambda1, double lambda2,
                             double lambda3) {
  return Hyperparams(p, lambda1, lambda2, lambda3, lambda2, lambda3, {});
}

}  // namespace dhgl
