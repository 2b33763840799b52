#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "dhgl/types.hpp"

namespace dhgl {

/// Normalized KKT residuals: primal feasibility, dual feasibility and the
/// worst of the three complementarity terms.
struct Residuals {
  double primal = 0.0;
  double dual = 0.0;
  double comp = 0.0;

  double max_residual() const;
  bool finite() const;
};

struct DadmmTrace {
  int iter = 0;
  Residuals res;
  double sigma = 0.0;
};

struct AlmTrace {
  int outer = 0;
  double sigma = 0.0;
  double gap = 0.0;
  Residuals res;
  int newton_iters = 0;
  int pcg_iters_total = 0;
};

struct SsnTrace {
  int iter = 0;
  double phi = 0.0;
  double grad_norm = 0.0;
  int pcg_iters = 0;
  double pcg_resid = 0.0;
  double pcg_tol = 0.0;
  double step = 0.0;
};

using DadmmTraceSink = std::function<void(const DadmmTrace&)>;
using AlmTraceSink = std::function<void(const AlmTrace&)>;
using SsnTraceSink = std::function<void(const SsnTrace&)>;

struct SolveReport {
  std::string solver;
  bool converged = false;
  Residuals residuals;
  double primal_objective = std::numeric_limits<double>::quiet_NaN();
  double dual_objective = std::numeric_limits<double>::quiet_NaN();
  int phase1_iters = 0;
  int phase2_outer = 0;
  int phase2_inner = 0;
  double seconds = 0.0;
  std::vector<Index> estimated_hubs;  // 0-based

  /// Iteration counts in the "T(I) / outer(inner)" reporting shape.
  std::string iter_summary() const;
};

/// Seconds as h:mm:ss (rounded to whole seconds).
std::string format_hms(double seconds);

}  // namespace dhgl
