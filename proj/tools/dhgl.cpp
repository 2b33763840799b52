// Command-line front end: generate synthetic instances, solve, tune,
// evaluate and benchmark hub-structured precision-matrix estimation.
//
// Exit codes: 0 success, 1 solver non-convergence or solver failure,
// 2 I/O or configuration error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "dhgl/alm.hpp"
#include "dhgl/dadmm.hpp"
#include "dhgl/datagen.hpp"
#include "dhgl/evaluation.hpp"
#include "dhgl/io.hpp"
#include "dhgl/tuning.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dhgl;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSolver = 1;
constexpr int kExitConfig = 2;

struct SolverFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --------------------------------------------------------------------------
// JSON config files: top-level keys map to global options, nested objects to
// subcommand options ({"solve": {"tol": 1e-6}}).
// --------------------------------------------------------------------------
class ConfigJson : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool, bool,
                        std::string) const override {
    json j;
    for (const CLI::Option* opt : app->get_options()) {
      if (!opt->get_lnames().empty() && opt->count() > 0) {
        j[opt->get_lnames()[0]] = opt->results().size() == 1
                                      ? json(opt->results()[0])
                                      : json(opt->results());
      }
    }
    return j.dump(2);
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    input >> j;
    std::vector<CLI::ConfigItem> out;
    collect(j, {}, out);
    return out;
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void collect(const json& j, std::vector<std::string> parents,
                      std::vector<CLI::ConfigItem>& out) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        auto deeper = parents;
        deeper.push_back(key);
        collect(value, deeper, out);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& e : value) item.inputs.push_back(scalar(e));
      } else {
        item.inputs.push_back(scalar(value));
      }
      out.push_back(std::move(item));
    }
  }
};

std::uint64_t ensure_seed(std::optional<std::uint64_t> seed) {
  if (seed) return *seed;
  std::random_device rd;
  std::uint64_t s = (std::uint64_t(rd()) << 32) ^ rd();
  std::cout << "seed: " << s << "\n";
  return s;
}

std::vector<Index> to_zero_based(const std::vector<Index>& one_based) {
  std::vector<Index> v;
  v.reserve(one_based.size());
  for (Index i : one_based) v.push_back(i - 1);
  return v;
}

json hubs_json(const std::vector<Index>& zero_based) {
  std::vector<Index> v;
  v.reserve(zero_based.size());
  for (Index i : zero_based) v.push_back(i + 1);
  return json(v);
}

void check_output_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory " + dir);
  }
  const fs::path probe = fs::path(dir) / ".dhgl_write_probe";
  std::ofstream f(probe);
  if (!f.good()) {
    throw std::runtime_error("output directory " + dir + " is not writable");
  }
  f.close();
  fs::remove(probe, ec);
}

// --------------------------------------------------------------------------
// generate
// --------------------------------------------------------------------------
struct GenerateArgs {
  int setup = 1;
  Index p = 0, n = 0;
  Index hubs = -1;
  double alpha = 2.5;
  std::optional<std::uint64_t> seed;
  std::string out, prefix = "instance";
  std::string cov_divisor = "n";
};

int cmd_generate(const GenerateArgs& a) {
  check_output_dir(a.out);
  const std::uint64_t seed = ensure_seed(a.seed);
  const Index hubs = a.hubs >= 0 ? a.hubs : default_hub_count(a.p);
  const CovDivisor div =
      a.cov_divisor == "n-1" ? CovDivisor::NMinus1 : CovDivisor::N;
  SyntheticInstance inst =
      generate_instance(a.setup, a.p, a.n, hubs, a.alpha, seed, div);
  save_instance(inst, a.out, a.prefix, div);
  std::cout << "wrote instance '" << a.prefix << "' (setup " << a.setup
            << ", p = " << a.p << ", n = " << a.n << ", true hubs = "
            << inst.true_hubs.size() << ") to " << a.out << "\n";
  return kExitOk;
}

// --------------------------------------------------------------------------
// solve
// --------------------------------------------------------------------------
struct SolveArgs {
  std::string input;
  std::string solver = "two-phase";
  double lambda1 = 0.4, lambda2 = 0.3, lambda3 = 1.0;
  double lambda4 = 0.15, lambda5 = 0.5;
  std::vector<Index> prior_hubs;  // 1-based on the command line
  double tol = 1e-6, switch_tol = 1e-4;
  int max_iter = 10000, phase1_max = 200, max_outer = 200;
  double sigma0 = 1.0, tau = 1.618;
  bool adaptive_sigma = false;
  std::string trace_file;
  std::string out, prefix = "solve";
};

int cmd_solve(const SolveArgs& a) {
  check_output_dir(a.out);
  Matrix Sm = read_matrix_csv(a.input);
  if (Sm.rows() != Sm.cols()) {
    throw std::runtime_error("covariance must be square: " + a.input);
  }
  SymMatrix S(std::move(Sm));
  Hyperparams hp(S.dim(), a.lambda1, a.lambda2, a.lambda3, a.lambda4,
                 a.lambda5, to_zero_based(a.prior_hubs));

  std::ofstream trace;
  if (!a.trace_file.empty()) {
    trace.open(a.trace_file);
    trace << "phase,iter,r_primal,r_dual,r_comp,sigma,gap,newton,pcg\n";
  }
  DadmmTraceSink dtrace;
  AlmTraceSink atrace;
  if (trace.is_open()) {
    dtrace = [&trace](const DadmmTrace& t) {
      trace << "1," << t.iter << ',' << t.res.primal << ',' << t.res.dual
            << ',' << t.res.comp << ',' << t.sigma << ",,,\n";
    };
    atrace = [&trace](const AlmTrace& t) {
      trace << "2," << t.outer << ',' << t.res.primal << ',' << t.res.dual
            << ',' << t.res.comp << ',' << t.sigma << ',' << t.gap << ','
            << t.newton_iters << ',' << t.pcg_iters_total << "\n";
    };
  }

  SolverState state;
  SolveReport rep;
  try {
    if (a.solver == "dadmm") {
      DadmmOptions opts;
      opts.tol = a.tol;
      opts.max_iter = a.max_iter;
      opts.sigma0 = a.sigma0;
      opts.tau = a.tau;
      opts.adaptive_sigma = a.adaptive_sigma;
      opts.trace = dtrace;
      std::tie(state, rep) = dadmm_solve(S, hp, opts);
    } else if (a.solver == "two-phase") {
      TwoPhaseOptions opts;
      opts.tol = a.tol;
      opts.switch_tol = a.switch_tol;
      opts.phase1_max_iter = a.phase1_max;
      opts.dadmm.sigma0 = a.sigma0;
      opts.dadmm.tau = a.tau;
      opts.dadmm.adaptive_sigma = a.adaptive_sigma;
      opts.dadmm.trace = dtrace;
      opts.alm.max_outer = a.max_outer;
      opts.alm.trace = atrace;
      std::tie(state, rep) = two_phase_solve(S, hp, opts);
    } else {
      throw std::runtime_error("unknown solver '" + a.solver + "'");
    }
  } catch (const std::runtime_error& e) {
    throw SolverFailure(e.what());
  }

  const InstanceFiles out = instance_file_names(a.out, a.prefix);
  const std::string theta_path =
      (fs::path(a.out) / (a.prefix + "_theta.csv")).string();
  const std::string report_path =
      (fs::path(a.out) / (a.prefix + "_report.json")).string();
  write_matrix_csv(theta_path, state.Theta.mat());
  write_text(report_path, solve_report_json(rep));
  (void)out;

  std::cout << "solver " << rep.solver << (rep.converged ? " converged" : " did NOT converge")
            << ": max residual " << rep.residuals.max_residual() << ", iters "
            << rep.iter_summary() << ", time " << format_hms(rep.seconds)
            << " (" << rep.seconds << " s)\n";
  return rep.converged ? kExitOk : kExitSolver;
}

// --------------------------------------------------------------------------
// tune
// --------------------------------------------------------------------------
struct TuneArgs {
  std::string data;
  std::vector<Index> known_hubs;  // 1-based
  int folds = 0;
  std::optional<std::uint64_t> seed;
  double lambda1 = 0.4;
  std::vector<double> lambda2_grid{0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<double> lambda3_grid{1.0, 1.5, 2.0};
  std::vector<double> lambda4_grid{0.05, 0.075, 0.1, 0.125, 0.15};
  std::vector<double> lambda5_grid{0.5, 1.0};
  double cv_tol = 1e-4;
  int cv_max_iter = 2000;
  double tol = 1e-6;
  int threads = 0;
  std::string out, prefix = "tune";
};

json cv_run_json(const CvRun& run) {
  json cands = json::array();
  for (std::size_t c = 0; c < run.candidates.size(); ++c) {
    const Hyperparams& hp = run.candidates[c];
    json fold_scores = json::array();
    for (Index f = 0; f < run.scores.cols(); ++f) {
      fold_scores.push_back(run.scores(Index(c), f));
    }
    cands.push_back({{"lambda1", hp.lambda1()},
                     {"lambda2", hp.lambda2()},
                     {"lambda3", hp.lambda3()},
                     {"lambda4", hp.lambda4()},
                     {"lambda5", hp.lambda5()},
                     {"fold_scores", fold_scores},
                     {"mean_score", run.means[c]}});
  }
  return {{"candidates", cands}, {"best", run.best}};
}

int cmd_tune(const TuneArgs& a) {
  check_output_dir(a.out);
  Matrix X = read_matrix_csv(a.data);
  const Index p = X.cols();
  const std::uint64_t seed = ensure_seed(a.seed);

  TuneOptions topts;
  topts.grid.lambda1 = a.lambda1;
  topts.grid.lambda2 = a.lambda2_grid;
  topts.grid.lambda3 = a.lambda3_grid;
  topts.grid.lambda4 = a.lambda4_grid;
  topts.grid.lambda5 = a.lambda5_grid;
  topts.folds = a.folds > 0 ? a.folds : default_fold_count(p);
  topts.seed = seed;
  topts.threads = a.threads;

  DadmmOptions cv_opts;
  cv_opts.tol = a.cv_tol;
  cv_opts.max_iter = a.cv_max_iter;
  topts.cv_solver = make_dadmm_solver(cv_opts);
  TwoPhaseOptions fin;
  fin.tol = a.tol;
  topts.final_solver = make_two_phase_solver(fin);

  TuneResult r = a.known_hubs.empty()
                     ? dhgl_unknown_hubs(X, topts)
                     : dhgl_known_hubs(X, to_zero_based(a.known_hubs), topts);

  const std::string theta_path =
      (fs::path(a.out) / (a.prefix + "_theta.csv")).string();
  const std::string report_path =
      (fs::path(a.out) / (a.prefix + "_report.json")).string();
  write_matrix_csv(theta_path, r.Theta.mat());

  json rep;
  rep["strategy"] = a.known_hubs.empty() ? "unknown-hubs" : "known-hubs";
  rep["folds"] = topts.folds;
  rep["seed"] = seed;
  rep["selected"] = {{"lambda1", r.hp.lambda1()},
                     {"lambda2", r.hp.lambda2()},
                     {"lambda3", r.hp.lambda3()},
                     {"lambda4", r.hp.lambda4()},
                     {"lambda5", r.hp.lambda5()}};
  rep["prior_hubs"] = hubs_json(r.prior);
  rep["stage1_hubs"] = hubs_json(r.stage1_hubs);
  rep["estimated_hubs"] = hubs_json(r.hubs);
  rep["used_prior"] = r.used_prior;
  rep["gl_sweep_failed"] = r.gl_sweep_failed;
  if (r.gl_lambda > 0.0) rep["gl_lambda"] = r.gl_lambda;
  rep["stage1_cv"] = cv_run_json(r.stage1_cv);
  if (r.stage2_cv) rep["stage2_cv"] = cv_run_json(*r.stage2_cv);
  rep["final_solve"] = json::parse(solve_report_json(r.final_report));
  write_text(report_path, rep.dump(2) + "\n");

  std::cout << "tuned (" << rep["strategy"].get<std::string>() << "): "
            << r.hubs.size() << " hubs, lambda2 = " << r.hp.lambda2()
            << ", lambda3 = " << r.hp.lambda3() << "\n";
  return r.final_report.converged ? kExitOk : kExitSolver;
}

// --------------------------------------------------------------------------
// eval
// --------------------------------------------------------------------------
struct EvalArgs {
  std::string estimate;
  std::string truth;
  std::string meta;
  std::vector<Index> true_hubs;  // 1-based
  double epsilon = 1e-5;
  Index hub_degree = -1;
  std::string out;
};

int cmd_eval(const EvalArgs& a) {
  Matrix Tm = read_matrix_csv(a.estimate);
  Matrix Pm = read_matrix_csv(a.truth);
  if (Tm.rows() != Pm.rows() || Tm.cols() != Pm.cols() ||
      Tm.rows() != Tm.cols()) {
    throw std::runtime_error("estimate/truth shape mismatch");
  }
  SymMatrix Theta(std::move(Tm));
  SymMatrix Prec(std::move(Pm));

  std::vector<Index> hubs0 = to_zero_based(a.true_hubs);
  if (hubs0.empty() && !a.meta.empty()) {
    hubs0 = read_instance_meta(a.meta).true_hubs;
  }

  GraphEstimate g = make_graph_estimate(Theta, a.epsilon, a.hub_degree);
  json rep;
  rep["epsilon"] = g.epsilon;
  rep["hub_degree"] = g.r;
  rep["estimated_hubs"] = hubs_json(g.hubs);
  rep["correct_edges"] = correct_edges(g.support, Prec);
  rep["mse"] = mse_offdiag(Theta, Prec);
  if (!hubs0.empty()) {
    rep["hub_node_proportion"] = hub_node_proportion(g.hubs, hubs0);
    rep["hub_edge_proportion"] = hub_edge_proportion(g.support, Prec, hubs0);
  } else {
    rep["hub_node_proportion"] = nullptr;
    rep["hub_edge_proportion"] = nullptr;
  }

  const std::string text = rep.dump(2) + "\n";
  if (!a.out.empty()) write_text(a.out, text);
  std::cout << text;
  return kExitOk;
}

// --------------------------------------------------------------------------
// bench
// --------------------------------------------------------------------------
struct BenchArgs {
  std::string cases;  // "n:p:setup,n:p:setup,..."
  std::string solvers = "both";
  std::optional<std::uint64_t> seed;
  double tol = 1e-6;
  int max_iter = 10000;
  bool parallel = false;
  std::string out;
};

struct BenchCase {
  Index n = 0, p = 0;
  int setup = 1;
};

std::vector<BenchCase> parse_cases(const std::string& s) {
  std::vector<BenchCase> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    BenchCase c;
    if (std::sscanf(tok.c_str(), "%ld:%ld:%d", &c.n, &c.p, &c.setup) != 3) {
      throw std::runtime_error("bad case spec '" + tok +
                               "' (expected n:p:setup)");
    }
    out.push_back(c);
  }
  if (out.empty()) throw std::runtime_error("no benchmark cases given");
  return out;
}

int cmd_bench(const BenchArgs& a) {
  const std::vector<BenchCase> cases = parse_cases(a.cases);
  const std::uint64_t seed = ensure_seed(a.seed);

  std::vector<std::string> solvers;
  if (a.solvers == "both") {
    solvers = {"dadmm", "two-phase"};
  } else {
    solvers = {a.solvers};
  }

  std::ostringstream csv;
  csv << "case,n,p,setup,hubs,seed,solver,max_residual,iter_phase1,"
         "iter_outer,iter_inner,iter_summary,time_hms,time_seconds,"
         "converged\n";

  auto run_case = [&](std::size_t idx) {
    const BenchCase& c = cases[idx];
    std::ostringstream rows;
    const std::uint64_t case_seed = seed + idx;
    const Index hubs = default_hub_count(c.p);
    SyntheticInstance inst =
        generate_instance(c.setup, c.p, c.n, hubs, 2.5, case_seed);
    Hyperparams hp = Hyperparams::hgl(c.p, 0.4, 0.3, 1.0);
    for (const std::string& solver : solvers) {
      SolveReport rep;
      try {
        if (solver == "dadmm") {
          DadmmOptions opts;
          opts.tol = a.tol;
          opts.max_iter = a.max_iter;
          auto [st, r] = dadmm_solve(inst.S, hp, opts);
          rep = r;
        } else {
          TwoPhaseOptions opts;
          opts.tol = a.tol;
          auto [st, r] = two_phase_solve(inst.S, hp, opts);
          rep = r;
        }
      } catch (const std::exception& e) {
        std::cerr << "dhgl: bench case " << idx << " solver " << solver
                  << " failed: " << e.what() << "\n";
        rows << idx << ',' << c.n << ',' << c.p << ',' << c.setup << ','
             << hubs << ',' << case_seed << ',' << solver
             << ",,,,,failed,,," << "false\n";
        continue;
      }
      rows << idx << ',' << c.n << ',' << c.p << ',' << c.setup << ','
           << hubs << ',' << case_seed << ',' << solver << ','
           << rep.residuals.max_residual() << ',' << rep.phase1_iters << ','
           << rep.phase2_outer << ',' << rep.phase2_inner << ','
           << '"' << rep.iter_summary() << '"' << ',' << format_hms(rep.seconds)
           << ',' << rep.seconds << ',' << (rep.converged ? "true" : "false")
           << "\n";
    }
    return rows.str();
  };

  if (a.parallel) {
    std::vector<std::future<std::string>> futs;
    for (std::size_t i = 0; i < cases.size(); ++i) {
      futs.push_back(std::async(std::launch::async, run_case, i));
    }
    for (auto& f : futs) csv << f.get();
  } else {
    for (std::size_t i = 0; i < cases.size(); ++i) csv << run_case(i);
  }

  if (!a.out.empty()) {
    write_text(a.out, csv.str());
  }
  std::cout << csv.str();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("DHGL_NUM_THREADS")) {
    Eigen::setNbThreads(std::atoi(threads));
  }

  CLI::App app{"Hub-structured sparse precision matrix estimation"};
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<ConfigJson>());
  app.set_config("--config", "", "JSON config file mirroring the flags");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate a synthetic instance");
  g->add_option("--setup", gen.setup, "Set-up 1, 2 or 3")
      ->check(CLI::Range(1, 3))
      ->required();
  g->add_option("--p", gen.p, "Dimension")->required();
  g->add_option("--n", gen.n, "Sample count")->required();
  g->add_option("--hubs", gen.hubs, "Planted hub count (default: preset)");
  g->add_option("--alpha", gen.alpha, "Degree-law exponent for set-up 3");
  g->add_option("--seed", gen.seed, "RNG seed (printed if omitted)");
  g->add_option("--out", gen.out, "Output directory")->required();
  g->add_option("--prefix", gen.prefix, "File name prefix");
  g->add_option("--cov-divisor", gen.cov_divisor, "n or n-1")
      ->check(CLI::IsMember({"n", "n-1"}));

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "Solve for a covariance matrix");
  s->add_option("--input", sol.input, "Covariance CSV")->required();
  s->add_option("--solver", sol.solver, "two-phase or dadmm")
      ->check(CLI::IsMember({"two-phase", "dadmm"}));
  s->add_option("--lambda1", sol.lambda1, "Edge penalty weight");
  s->add_option("--lambda2", sol.lambda2, "Column l1 weight");
  s->add_option("--lambda3", sol.lambda3, "Column l2 weight");
  s->add_option("--lambda4", sol.lambda4, "Prior-column l1 weight");
  s->add_option("--lambda5", sol.lambda5, "Prior-column l2 weight");
  s->add_option("--prior-hubs", sol.prior_hubs,
                "1-based prior hub indices")
      ->delimiter(',');
  s->add_option("--tol", sol.tol, "Target KKT residual");
  s->add_option("--switch-tol", sol.switch_tol, "Phase handoff residual");
  s->add_option("--max-iter", sol.max_iter, "Iteration cap (dadmm)");
  s->add_option("--phase1-max", sol.phase1_max, "Phase I iteration cap");
  s->add_option("--max-outer", sol.max_outer, "Phase II outer cap");
  s->add_option("--sigma0", sol.sigma0, "Initial penalty parameter");
  s->add_option("--tau", sol.tau, "Multiplier step factor");
  s->add_flag("--adaptive-sigma", sol.adaptive_sigma,
              "Residual-balancing sigma updates (phase I)");
  s->add_option("--trace", sol.trace_file, "Per-iteration trace CSV");
  s->add_option("--out", sol.out, "Output directory")->required();
  s->add_option("--prefix", sol.prefix, "File name prefix");

  TuneArgs tun;
  auto* t = app.add_subcommand("tune", "Cross-validated hyperparameters");
  t->add_option("--data", tun.data, "Data matrix CSV (n x p)")->required();
  t->add_option("--known-hubs", tun.known_hubs, "1-based known hub indices")
      ->delimiter(',');
  t->add_option("--folds", tun.folds, "Fold count (default 5; 3 for large p)");
  t->add_option("--seed", tun.seed, "RNG seed (printed if omitted)");
  t->add_option("--lambda1", tun.lambda1, "Fixed edge penalty weight");
  t->add_option("--lambda2-grid", tun.lambda2_grid, "Grid")->delimiter(',');
  t->add_option("--lambda3-grid", tun.lambda3_grid, "Grid")->delimiter(',');
  t->add_option("--lambda4-grid", tun.lambda4_grid, "Grid")->delimiter(',');
  t->add_option("--lambda5-grid", tun.lambda5_grid, "Grid")->delimiter(',');
  t->add_option("--cv-tol", tun.cv_tol, "Fold-solve residual target");
  t->add_option("--cv-max-iter", tun.cv_max_iter, "Fold-solve iteration cap");
  t->add_option("--tol", tun.tol, "Final-solve residual target");
  t->add_option("--threads", tun.threads, "CV worker threads (0 = hardware)");
  t->add_option("--out", tun.out, "Output directory")->required();
  t->add_option("--prefix", tun.prefix, "File name prefix");

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "Efficacy measures for an estimate");
  e->add_option("--estimate", ev.estimate, "Estimated precision CSV")
      ->required();
  e->add_option("--truth", ev.truth, "True precision CSV")->required();
  e->add_option("--meta", ev.meta, "Instance sidecar with true hubs");
  e->add_option("--true-hubs", ev.true_hubs, "1-based true hub indices")
      ->delimiter(',');
  e->add_option("--epsilon", ev.epsilon, "Support threshold");
  e->add_option("--hub-degree", ev.hub_degree,
                "Hub degree cut r (default floor(p/5))");
  e->add_option("--out", ev.out, "Metrics JSON path");

  BenchArgs ben;
  auto* b = app.add_subcommand("bench", "Benchmark table over cases");
  b->add_option("--cases", ben.cases, "Comma list of n:p:setup")->required();
  b->add_option("--solvers", ben.solvers, "both, dadmm or two-phase")
      ->check(CLI::IsMember({"both", "dadmm", "two-phase"}));
  b->add_option("--seed", ben.seed, "Base seed (printed if omitted)");
  b->add_option("--tol", ben.tol, "Residual target");
  b->add_option("--max-iter", ben.max_iter, "dadmm iteration cap");
  b->add_flag("--parallel", ben.parallel, "Run cases concurrently");
  b->add_option("--out", ben.out, "Output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*s) return cmd_solve(sol);
    if (*t) return cmd_tune(tun);
    if (*e) return cmd_eval(ev);
    if (*b) return cmd_bench(ben);
  } catch (const SolverFailure& err) {
    std::cerr << "dhgl: solver failure: " << err.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& err) {
    std::cerr << "dhgl: error: " << err.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
