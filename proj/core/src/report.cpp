#include "dhgl/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace dhgl {

double Residuals::max_residual() const {
  return std::max({primal, dual, comp});
}

bool Residuals::finite() const {
  return std::isfinite(primal) && std::isfinite(dual) && std::isfinite(comp);
}

std::string SolveReport::iter_summary() const {
  char buf[96];
  if (phase2_outer > 0 || phase2_inner > 0) {
    std::snprintf(buf, sizeof(buf), "%d / %d(%d)", phase1_iters, phase2_outer,
                  phase2_inner);
  } else {
    std::snprintf(buf, sizeof(buf), "%d", phase1_iters);
  }
  return buf;
}

std::string format_hms(double seconds) {
  long total = std::lround(std::max(0.0, seconds));
  long h = total / 3600;
  long m = (total % 3600) / 60;
  long s = total % 60;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%ld:%02ld:%02ld", h, m, s);
  return buf;
}

}  // namespace dhgl
