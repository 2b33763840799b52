#include "dhgl/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dhgl {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(std::string_view tok, const std::string& path) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  require(ec == std::errc() && ptr == last,
          "bad numeric field '" + std::string(tok) + "' in " + path);
  return v;
}

}  // namespace

void write_matrix_csv(const std::string& path, const Matrix& M) {
  std::ofstream f(path);
  require(f.good(), "cannot open " + path + " for writing");
  for (Index j = 0; j < M.cols(); ++j) {
    f << (j ? "," : "") << 'c' << (j + 1);
  }
  f << '\n';
  for (Index i = 0; i < M.rows(); ++i) {
    for (Index j = 0; j < M.cols(); ++j) {
      if (j) f << ',';
      f << fmt17(M(i, j));
    }
    f << '\n';
  }
  require(f.good(), "write failed for " + path);
}

Matrix read_matrix_csv(const std::string& path) {
  std::ifstream f(path);
  require(f.good(), "cannot open " + path);
  std::string line;
  require(bool(std::getline(f, line)), "empty csv " + path);
  Index cols = 1;
  for (char c : line) {
    if (c == ',') ++cols;
  }
  std::vector<double> vals;
  Index rows = 0;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    Index seen = 0;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t end = line.find(',', start);
      if (end == std::string::npos) end = line.size();
      vals.push_back(parse_double(
          std::string_view(line).substr(start, end - start), path));
      ++seen;
      start = end + 1;
      if (end == line.size()) break;
    }
    require(seen == cols, "ragged csv row in " + path);
    ++rows;
  }
  Matrix M(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      M(i, j) = vals[std::size_t(i * cols + j)];
    }
  }
  return M;
}

void write_adjacency_mm(const std::string& path, const Eigen::MatrixXi& A) {
  std::ofstream f(path);
  require(f.good(), "cannot open " + path + " for writing");
  const Index p = A.rows();
  Index nnz = 0;
  for (Index j = 0; j < p; ++j) {
    for (Index i = j + 1; i < p; ++i) {
      if (A(i, j) != 0) ++nnz;
    }
  }
  f << "%%MatrixMarket matrix coordinate pattern symmetric\n";
  f << p << ' ' << p << ' ' << nnz << '\n';
  for (Index j = 0; j < p; ++j) {
    for (Index i = j + 1; i < p; ++i) {
      if (A(i, j) != 0) f << (i + 1) << ' ' << (j + 1) << '\n';
    }
  }
  require(f.good(), "write failed for " + path);
}

Eigen::MatrixXi read_adjacency_mm(const std::string& path) {
  std::ifstream f(path);
  require(f.good(), "cannot open " + path);
  std::string line;
  require(bool(std::getline(f, line)), "empty file " + path);
  require(line.rfind("%%MatrixMarket", 0) == 0,
          path + " is not a Matrix Market file");
  std::istringstream head(line);
  std::string tag, object, format, field, symmetry;
  head >> tag >> object >> format >> field >> symmetry;
  require(object == "matrix" && format == "coordinate",
          "unsupported Matrix Market layout in " + path);
  const bool pattern = (field == "pattern");
  const bool symmetric = (symmetry == "symmetric");

  while (std::getline(f, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream dims(line);
  Index rows = 0, cols = 0;
  long long nnz = 0;
  dims >> rows >> cols >> nnz;
  require(rows > 0 && rows == cols, "bad dimensions in " + path);

  Eigen::MatrixXi A = Eigen::MatrixXi::Zero(rows, cols);
  for (long long k = 0; k < nnz; ++k) {
    require(bool(std::getline(f, line)), "truncated entries in " + path);
    std::istringstream entry(line);
    Index i = 0, j = 0;
    double v = 1.0;
    entry >> i >> j;
    if (!pattern) entry >> v;
    require(i >= 1 && i <= rows && j >= 1 && j <= cols,
            "entry out of range in " + path);
    if (v != 0.0) {
      A(i - 1, j - 1) = 1;
      if (symmetric) A(j - 1, i - 1) = 1;
    }
  }
  return A;
}

InstanceFiles instance_file_names(const std::string& dir,
                                  const std::string& prefix) {
  const std::filesystem::path d(dir);
  InstanceFiles f;
  f.adjacency = (d / (prefix + "_adjacency.mtx")).string();
  f.precision = (d / (prefix + "_precision.csv")).string();
  f.data = (d / (prefix + "_data.csv")).string();
  f.covariance = (d / (prefix + "_covariance.csv")).string();
  f.meta = (d / (prefix + "_meta.json")).string();
  return f;
}

void save_instance(const SyntheticInstance& inst, const std::string& dir,
                   const std::string& prefix, CovDivisor div) {
  std::filesystem::create_directories(dir);
  const InstanceFiles files = instance_file_names(dir, prefix);
  write_adjacency_mm(files.adjacency, inst.A);
  write_matrix_csv(files.precision, inst.Sigma_inv.mat());
  write_matrix_csv(files.data, inst.X);
  write_matrix_csv(files.covariance, inst.S.mat());

  nlohmann::json meta;
  meta["setup"] = inst.setup;
  meta["p"] = inst.p;
  meta["n"] = inst.n;
  meta["num_hubs"] = inst.num_hubs;
  meta["alpha"] = inst.alpha;
  meta["seed"] = inst.seed;
  std::vector<Index> hubs1;
  for (Index h : inst.true_hubs) hubs1.push_back(h + 1);
  meta["true_hubs"] = hubs1;  // 1-based on disk
  meta["cov_divisor"] = (div == CovDivisor::N) ? "n" : "n-1";
  meta["files"] = {{"adjacency", files.adjacency},
                   {"precision", files.precision},
                   {"data", files.data},
                   {"covariance", files.covariance}};
  write_text(files.meta, meta.dump(2) + "\n");
}

InstanceMeta read_instance_meta(const std::string& path) {
  std::ifstream f(path);
  require(f.good(), "cannot open " + path);
  nlohmann::json j;
  f >> j;
  InstanceMeta m;
  m.setup = j.at("setup").get<int>();
  m.p = j.at("p").get<Index>();
  m.n = j.at("n").get<Index>();
  m.num_hubs = j.value("num_hubs", Index(0));
  m.alpha = j.value("alpha", 0.0);
  m.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& h : j.at("true_hubs")) {
    m.true_hubs.push_back(h.get<Index>() - 1);
  }
  m.cov_divisor = j.value("cov_divisor", std::string("n"));
  if (j.contains("files")) {
    m.files.adjacency = j["files"].value("adjacency", "");
    m.files.precision = j["files"].value("precision", "");
    m.files.data = j["files"].value("data", "");
    m.files.covariance = j["files"].value("covariance", "");
  }
  m.files.meta = path;
  return m;
}

std::string solve_report_json(const SolveReport& rep) {
  nlohmann::json j;
  j["solver"] = rep.solver;
  j["converged"] = rep.converged;
  j["residuals"] = {{"primal", rep.residuals.primal},
                    {"dual", rep.residuals.dual},
                    {"complementarity", rep.residuals.comp},
                    {"max", rep.residuals.max_residual()}};
  j["objective"] = {{"primal", rep.primal_objective},
                    {"dual", rep.dual_objective},
                    {"gap", rep.primal_objective - rep.dual_objective}};
  j["iterations"] = {{"phase1", rep.phase1_iters},
                     {"phase2_outer", rep.phase2_outer},
                     {"phase2_inner", rep.phase2_inner},
                     {"summary", rep.iter_summary()}};
  j["time"] = {{"seconds", rep.seconds}, {"hms", format_hms(rep.seconds)}};
  std::vector<Index> hubs1;
  for (Index h : rep.estimated_hubs) hubs1.push_back(h + 1);
  j["estimated_hubs"] = hubs1;
  return j.dump(2) + "\n";
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  require(f.good(), "cannot open " + path + " for writing");
  f << content;
  require(f.good(), "write failed for " + path);
}

}  // namespace dhgl
