#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "dhgl/io.hpp"
#include "oracles.hpp"

using namespace dhgl;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("dhgl_test_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("csv round-trip is exact to the last digit") {
  TempDir tmp;
  Rng rng(401);
  Matrix M = oracle::random_matrix(rng, 7, 5, 3.0);
  M(0, 0) = 1.0 / 3.0;
  M(1, 2) = -1e-17;
  M(2, 3) = 12345678901234.5;
  write_matrix_csv(tmp.file("m.csv"), M);
  Matrix R = read_matrix_csv(tmp.file("m.csv"));
  REQUIRE(R.rows() == 7);
  REQUIRE(R.cols() == 5);
  CHECK((R - M).cwiseAbs().maxCoeff() == 0.0);  // 17 digits round-trip

  // Writing twice produces identical bytes.
  write_matrix_csv(tmp.file("m2.csv"), M);
  std::ifstream a(tmp.file("m.csv")), b(tmp.file("m2.csv"));
  std::string sa((std::istreambuf_iterator<char>(a)),
                 std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)),
                 std::istreambuf_iterator<char>());
  CHECK(sa == sb);

  CHECK_THROWS(read_matrix_csv(tmp.file("missing.csv")));
}

TEST_CASE("matrix market round-trip") {
  TempDir tmp;
  AdjacencyGraph g = gen_setup1(30, 3, 402);
  write_adjacency_mm(tmp.file("a.mtx"), g.A);
  Eigen::MatrixXi A = read_adjacency_mm(tmp.file("a.mtx"));
  CHECK((A - g.A).cwiseAbs().sum() == 0);

  // General-format and explicit-value files parse too.
  std::ofstream f(tmp.file("gen.mtx"));
  f << "%%MatrixMarket matrix coordinate integer general\n";
  f << "% comment line\n";
  f << "3 3 2\n2 1 1\n1 2 1\n";
  f.close();
  Eigen::MatrixXi B = read_adjacency_mm(tmp.file("gen.mtx"));
  CHECK(B(1, 0) == 1);
  CHECK(B(0, 1) == 1);
  CHECK(B.sum() == 2);
}

TEST_CASE("instance save and sidecar load") {
  TempDir tmp;
  SyntheticInstance inst = generate_instance(1, 25, 40, 2, 2.5, 403);
  save_instance(inst, tmp.path.string(), "case", CovDivisor::N);

  InstanceFiles files = instance_file_names(tmp.path.string(), "case");
  CHECK(fs::exists(files.adjacency));
  CHECK(fs::exists(files.precision));
  CHECK(fs::exists(files.data));
  CHECK(fs::exists(files.covariance));
  CHECK(fs::exists(files.meta));

  InstanceMeta meta = read_instance_meta(files.meta);
  CHECK(meta.setup == 1);
  CHECK(meta.p == 25);
  CHECK(meta.n == 40);
  CHECK(meta.seed == 403);
  CHECK(meta.true_hubs == inst.true_hubs);  // 1-based on disk, 0-based here
  CHECK(meta.cov_divisor == "n");

  Matrix S = read_matrix_csv(files.covariance);
  CHECK((S - inst.S.mat()).cwiseAbs().maxCoeff() == 0.0);
  Eigen::MatrixXi A = read_adjacency_mm(files.adjacency);
  CHECK((A - inst.A).cwiseAbs().sum() == 0);
}

TEST_CASE("solve report serialization") {
  SolveReport rep;
  rep.solver = "two-phase";
  rep.converged = true;
  rep.residuals = {1e-7, 2e-7, 3e-7};
  rep.primal_objective = 12.5;
  rep.dual_objective = 12.4999;
  rep.phase1_iters = 200;
  rep.phase2_outer = 12;
  rep.phase2_inner = 19;
  rep.seconds = 3725.0;
  rep.estimated_hubs = {0, 4, 9};

  auto j = nlohmann::json::parse(solve_report_json(rep));
  CHECK(j["solver"] == "two-phase");
  CHECK(j["converged"] == true);
  CHECK(j["residuals"]["max"].get<double>() == doctest::Approx(3e-7));
  CHECK(j["iterations"]["phase1"] == 200);
  CHECK(j["iterations"]["summary"] == "200 / 12(19)");
  CHECK(j["time"]["hms"] == "1:02:05");
  CHECK(j["estimated_hubs"] == nlohmann::json({1, 5, 10}));
}

TEST_CASE("hms formatting") {
  CHECK(format_hms(0.0) == "0:00:00");
  CHECK(format_hms(59.4) == "0:00:59");
  CHECK(format_hms(61.0) == "0:01:01");
  CHECK(format_hms(3600.0) == "1:00:00");
  CHECK(format_hms(4 * 3600 + 7 * 60 + 22.0) == "4:07:22");
}
