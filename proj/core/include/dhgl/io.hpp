#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dhgl/datagen.hpp"
#include "dhgl/report.hpp"
#include "dhgl/types.hpp"

namespace dhgl {

/// Headered CSV (column names c1..cp), values printed with 17 significant
/// digits so write-then-read round-trips exactly.
void write_matrix_csv(const std::string& path, const Matrix& M);
Matrix read_matrix_csv(const std::string& path);

/// Matrix Market coordinate pattern (symmetric, 1-based, strict lower
/// triangle; the diagonal is always zero here).
void write_adjacency_mm(const std::string& path, const Eigen::MatrixXi& A);
Eigen::MatrixXi read_adjacency_mm(const std::string& path);

struct InstanceFiles {
  std::string adjacency, precision, data, covariance, meta;
};
InstanceFiles instance_file_names(const std::string& dir,
                                  const std::string& prefix);

/// Writes adjacency (Matrix Market), precision/data/covariance (CSV) and the
/// JSON sidecar with seed, set-up and 1-based hub indices.
void save_instance(const SyntheticInstance& inst, const std::string& dir,
                   const std::string& prefix, CovDivisor div);

struct InstanceMeta {
  int setup = 0;
  Index p = 0, n = 0;
  Index num_hubs = 0;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  std::vector<Index> true_hubs;  // 0-based in memory, 1-based on disk
  std::string cov_divisor;
  InstanceFiles files;
};
InstanceMeta read_instance_meta(const std::string& path);

/// Serialized solve report (residuals, objectives, per-phase iteration
/// counts, wall time as seconds and h:mm:ss, 1-based hub indices).
std::string solve_report_json(const SolveReport& rep);

void write_text(const std::string& path, const std::string& content);

}  // namespace dhgl
