// End-to-end checks of the command-line tool: spawns the real binary
// (path in DHGL_BIN) and inspects files and exit codes.
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

#include "dhgl/io.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string bin() {
  const char* b = std::getenv("DHGL_BIN");
  REQUIRE(b != nullptr);
  return b;
}

int run(const std::string& args) {
  const std::string cmd = bin() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  REQUIRE(f.good());
  return std::string((std::istreambuf_iterator<char>(f)),
                     std::istreambuf_iterator<char>());
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("dhgl_cli_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("generate writes the four files plus sidecar, deterministically") {
  TempDir tmp;
  const std::string args = "generate --setup 1 --p 40 --n 30 --hubs 3 "
                           "--seed 7 --out " +
                           tmp.str();
  CHECK(run(args + " --prefix a") == 0);
  CHECK(run(args + " --prefix b") == 0);

  for (const char* suffix :
       {"_adjacency.mtx", "_precision.csv", "_data.csv", "_covariance.csv",
        "_meta.json"}) {
    CHECK(fs::exists(tmp.path / (std::string("a") + suffix)));
  }
  // Byte-identical reruns under the same seed.
  for (const char* suffix :
       {"_adjacency.mtx", "_precision.csv", "_data.csv", "_covariance.csv"}) {
    CHECK(slurp(tmp.path / (std::string("a") + suffix)) ==
          slurp(tmp.path / (std::string("b") + suffix)));
  }

  auto meta = json::parse(slurp(tmp.path / "a_meta.json"));
  CHECK(meta["setup"] == 1);
  CHECK(meta["p"] == 40);
  CHECK(meta["true_hubs"].size() == 3);

  // Set-up 3 takes --alpha.
  CHECK(run("generate --setup 3 --p 40 --n 30 --alpha 2.5 --seed 3 --out " +
            tmp.str() + " --prefix s3") == 0);
}

TEST_CASE("solve writes estimate and report, honors caps and exit codes") {
  TempDir tmp;
  REQUIRE(run("generate --setup 1 --p 30 --n 60 --hubs 2 --seed 11 --out " +
              tmp.str()) == 0);
  const std::string cov = (tmp.path / "instance_covariance.csv").string();

  CHECK(run("solve --input " + cov + " --solver two-phase --tol 1e-6 --out " +
            tmp.str()) == 0);
  auto rep = json::parse(slurp(tmp.path / "solve_report.json"));
  CHECK(rep["converged"] == true);
  CHECK(rep["residuals"]["max"].get<double>() < 1e-6);
  CHECK(rep["iterations"]["phase1"].get<int>() <= 200);
  CHECK(rep["time"]["seconds"].get<double>() > 0.0);
  CHECK(fs::exists(tmp.path / "solve_theta.csv"));

  // Iteration cap that cannot converge: exit code 1, report says so.
  CHECK(run("solve --input " + cov +
            " --solver dadmm --tol 1e-10 --max-iter 3 --prefix capped --out " +
            tmp.str()) == 1);
  auto capped = json::parse(slurp(tmp.path / "capped_report.json"));
  CHECK(capped["converged"] == false);
  CHECK(capped["iterations"]["phase1"] == 3);

  // I/O failures are distinct from solver failures.
  CHECK(run("solve --input /nonexistent.csv --out " + tmp.str()) == 2);
  CHECK(run("solve --out " + tmp.str()) == 2);  // missing required flag

  // Trace file with per-phase records.
  CHECK(run("solve --input " + cov + " --trace " +
            (tmp.path / "trace.csv").string() + " --prefix tr --out " +
            tmp.str()) == 0);
  const std::string trace = slurp(tmp.path / "trace.csv");
  CHECK(trace.rfind("phase,iter,", 0) == 0);
  CHECK(trace.find("\n2,") != std::string::npos);  // phase-II rows exist
}

TEST_CASE("eval produces the four measures") {
  TempDir tmp;
  REQUIRE(run("generate --setup 1 --p 30 --n 60 --hubs 2 --seed 13 --out " +
              tmp.str()) == 0);
  const std::string prec = (tmp.path / "instance_precision.csv").string();
  const std::string meta = (tmp.path / "instance_meta.json").string();

  // Perfect estimate: proportions 1, mse 0, count = true edges.
  CHECK(run("eval --estimate " + prec + " --truth " + prec + " --meta " +
            meta + " --out " + (tmp.path / "metrics.json").string()) == 0);
  auto m = json::parse(slurp(tmp.path / "metrics.json"));
  CHECK(m["hub_node_proportion"].get<double>() == 1.0);
  CHECK(m["hub_edge_proportion"].get<double>() == 1.0);
  CHECK(m["mse"].get<double>() == 0.0);
  CHECK(m["correct_edges"].get<long>() > 0);
  CHECK(m["epsilon"].get<double>() == 1e-5);
  CHECK(m["hub_degree"].get<long>() == 6);  // floor(30/5)

  // Overrides.
  CHECK(run("eval --estimate " + prec + " --truth " + prec +
            " --epsilon 0.5 --hub-degree 2 --out " +
            (tmp.path / "m2.json").string()) == 0);
  auto m2 = json::parse(slurp(tmp.path / "m2.json"));
  CHECK(m2["epsilon"].get<double>() == 0.5);
  CHECK(m2["hub_degree"].get<long>() == 2);

  // Shape mismatch is a config error.
  TempDir tmp2;
  REQUIRE(run("generate --setup 1 --p 20 --n 30 --hubs 2 --seed 14 --out " +
              tmp2.str()) == 0);
  CHECK(run("eval --estimate " + prec + " --truth " +
            (tmp2.path / "instance_precision.csv").string()) == 2);
}

TEST_CASE("bench emits the documented csv schema") {
  TempDir tmp;
  const std::string out = (tmp.path / "bench.csv").string();
  CHECK(run("bench --cases 40:20:1 --seed 5 --tol 1e-5 --out " + out) == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("case,n,p,setup,hubs,seed,solver,max_residual,iter_phase1,"
                  "iter_outer,iter_inner,iter_summary,time_hms,time_seconds,"
                  "converged\n",
                  0) == 0);
  // One row per case per solver.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.find(",dadmm,") != std::string::npos);
  CHECK(csv.find(",two-phase,") != std::string::npos);
  CHECK(csv.find(",true\n") != std::string::npos);
}

TEST_CASE("json config files feed subcommand options") {
  TempDir tmp;
  REQUIRE(run("generate --setup 1 --p 25 --n 40 --hubs 2 --seed 17 --out " +
              tmp.str()) == 0);
  const std::string cov = (tmp.path / "instance_covariance.csv").string();
  const std::string cfg = (tmp.path / "cfg.json").string();
  dhgl::write_text(cfg, std::string("{\n  \"solve\": {\n    \"input\": \"") +
                            cov + "\",\n    \"solver\": \"dadmm\",\n" +
                            "    \"tol\": 1e-5,\n    \"out\": \"" + tmp.str() +
                            "\",\n    \"prefix\": \"fromcfg\"\n  }\n}\n");
  CHECK(run("--config " + cfg + " solve") == 0);
  auto rep = json::parse(slurp(tmp.path / "fromcfg_report.json"));
  CHECK(rep["solver"] == "dadmm");
  CHECK(rep["residuals"]["max"].get<double>() < 1e-5);
}
