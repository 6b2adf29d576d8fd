// Command-line front end: classify | fixed-points | simulate | predict |
// graph | verify, with text or JSON reports.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "idemdyn/classifier.hpp"
#include "idemdyn/dynamics.hpp"
#include "idemdyn/fixpoint.hpp"
#include "idemdyn/graph.hpp"
#include "idemdyn/io.hpp"
#include "idemdyn/random.hpp"
#include "idemdyn/report.hpp"

namespace {

using namespace idemdyn;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNotClassified = 3;
constexpr int kExitVerificationFailed = 4;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::not_class1:
    case ErrorCode::not_class2:
    case ErrorCode::not_classified:
    case ErrorCode::not_applicable:
      return kExitNotClassified;
    case ErrorCode::root_finding_failed:
      return 1;
    default:
      return kExitParse;
  }
}

struct GlobalOptions {
  std::string format = "text";
  double tol = 1e-9;
  bool timing = false;
};

void emit(Report& report, const GlobalOptions& opts,
          std::chrono::steady_clock::time_point started) {
  if (opts.timing) {
    const auto elapsed = std::chrono::steady_clock::now() - started;
    report.timing_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(elapsed).count();
  }
  if (opts.format == "json") {
    std::cout << report.to_json().dump(2) << "\n";
  } else {
    std::cout << report.to_text();
  }
}

OrderedJson file_input_json(const std::string& path, const std::string& bytes) {
  OrderedJson input;
  input["path"] = path;
  input["digest"] = digest_hex(bytes);
  return input;
}

Matrix load_matrix(const std::string& path, OrderedJson& input_out) {
  const std::string bytes = read_file(path);
  input_out = file_input_json(path, bytes);
  return parse_matrix_json(bytes, path);
}

void add_saturation_warnings(const Trajectory& traj, Report& report) {
  for (const auto& sat : traj.saturations) {
    report.warnings.push_back("saturation: coordinate " + std::to_string(sat.coord + 1) +
                              " fell below -1e300 at step " + std::to_string(sat.step) +
                              " and is reported as -inf");
  }
}

// ---------------------------------------------------------------------------

int cmd_classify(const std::string& path, const GlobalOptions& opts) {
  const auto started = std::chrono::steady_clock::now();
  Report report;
  report.command = "classify";
  report.tolerance = opts.tol;
  const Matrix a = load_matrix(path, report.input);
  const OperatorClass c = classify(a);
  report.classification = classification_json(c, a);
  emit(report, opts, started);
  return kExitOk;
}

int cmd_fixed_points(const std::string& path, const GlobalOptions& opts) {
  const auto started = std::chrono::steady_clock::now();
  Report report;
  report.command = "fixed-points";
  report.tolerance = opts.tol;
  const Matrix a = load_matrix(path, report.input);
  const OperatorClass c = classify(a);
  report.classification = classification_json(c, a);
  if (is_neither(c)) {
    throw Error(ErrorCode::not_classified, "matrix does not preserve I_n");
  }
  if (is_class1(c)) {
    const FixedPointSet fix = fixed_points_class1(a, opts.tol);
    report.results["fixed_points"] = fixed_point_set_json(fix);
    report.results["reduced_system"] = reduced_system_json(reduce_class1(a, opts.tol));
    const auto* c1 = std::get_if<ClassI>(&c);
    if (a.size() == 3 && c1->zero_rows.size() == 1) {
      const FixedPointSet oracle = fixed_points_n3_oracle(a, opts.tol);
      report.results["n3_oracle"] = fixed_point_set_json(oracle);
      report.results["n3_oracle_agrees"] = fixed_point_sets_match(fix, oracle, 1e-9);
    }
  } else {
    report.results["fixed_points"] = fixed_point_set_json(fixed_points_class2(a, opts.tol));
  }
  emit(report, opts, started);
  return kExitOk;
}

int cmd_simulate(const std::string& path, const std::string& x0_spec, int steps,
                 const std::string& csv_path, const GlobalOptions& opts) {
  const auto started = std::chrono::steady_clock::now();
  Report report;
  report.command = "simulate";
  report.tolerance = opts.tol;
  const Matrix a = load_matrix(path, report.input);
  report.input["x0"] = x0_spec;
  const IdempotentMeasure x0 = parse_measure_spec(x0_spec);
  const OperatorClass c = classify(a);
  report.classification = classification_json(c, a);

  const Trajectory traj = simulate(a, x0, steps);
  add_saturation_warnings(traj, report);
  const OmegaEstimate omega = omega_estimate(a, x0, steps, opts.tol);
  report.results["steps"] = steps;
  report.results["final"] = measure_json(traj.points.back());
  report.results["omega"] = omega_json(omega);
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) {
      throw Error(ErrorCode::io_error, "cannot write " + csv_path);
    }
    write_trajectory_csv(csv, traj);
    report.results["csv"] = csv_path;
  }
  emit(report, opts, started);
  return kExitOk;
}

int cmd_predict(const std::string& path, const std::string& x0_spec, const GlobalOptions& opts) {
  const auto started = std::chrono::steady_clock::now();
  Report report;
  report.command = "predict";
  report.tolerance = opts.tol;
  const Matrix a = load_matrix(path, report.input);
  report.input["x0"] = x0_spec;
  const IdempotentMeasure x0 = parse_measure_spec(x0_spec);
  const OperatorClass c = classify(a);
  report.classification = classification_json(c, a);

  std::vector<int> seeds;
  for (int i = 0; i < x0.size(); ++i) {
    if (x0[i].is_neg_inf()) seeds.push_back(i);
  }
  if (is_class2(c)) {
    report.results["limits"] = prediction_json(predict_limit_class2(a, x0, opts.tol));
  } else if (is_class1(c)) {
    const AsymptoticClass1 asym = class1_asymptotics(a, opts.tol);
    if (asym.low_confidence) {
      report.warnings.push_back(
          "low_confidence: norm-growth estimate and root finder disagree beyond 1e-2");
    }
    report.results["asymptotics"] = asymptotics_json(asym);
  } else {
    throw Error(ErrorCode::not_classified, "matrix does not preserve I_n");
  }
  report.results["neg_inf_fate"] = neg_inf_fate_json(neg_inf_fate(a, seeds));
  emit(report, opts, started);
  return kExitOk;
}

int cmd_graph(const std::string& path, const std::string& dot_path, const GlobalOptions& opts) {
  const auto started = std::chrono::steady_clock::now();
  Report report;
  report.command = "graph";
  report.tolerance = opts.tol;
  const Matrix a = load_matrix(path, report.input);
  const OperatorClass c = classify(a);
  report.classification = classification_json(c, a);
  const Pseudograph g = build_graph(a);  // rejects Neither
  const CycleReport cycles = cycles_and_longest_path(g);
  report.results["graph"] = graph_json(g, cycles);
  if (!dot_path.empty()) {
    write_file(dot_path, to_dot(g));
    report.results["dot"] = dot_path;
  }
  emit(report, opts, started);
  return kExitOk;
}

struct VerifyOptions {
  std::string matrix_path;
  std::string random_class;
  int n = 4;
  int cases = 100;
  uint64_t seed = 1;
  int steps = 500;
  double neg_inf_prob = 0.1;
  double force_unit_prob = 0.0;
};

int cmd_verify(const VerifyOptions& vo, const GlobalOptions& opts) {
  const auto started = std::chrono::steady_clock::now();
  Report report;
  report.command = "verify";
  report.tolerance = opts.tol;

  std::optional<Matrix> fixed_matrix;
  if (!vo.matrix_path.empty()) {
    fixed_matrix = load_matrix(vo.matrix_path, report.input);
    const OperatorClass c = classify(*fixed_matrix);
    if (is_neither(c)) {
      throw Error(ErrorCode::not_classified, "matrix does not preserve I_n");
    }
    report.classification = classification_json(c, *fixed_matrix);
  } else {
    report.input["random"] = vo.random_class;
    report.input["n"] = vo.n;
    report.input["digest"] =
        digest_hex("random:" + vo.random_class + ":n=" + std::to_string(vo.n) +
                   ":cases=" + std::to_string(vo.cases) + ":seed=" + std::to_string(vo.seed));
  }
  OrderedJson rng_info;
  rng_info["algorithm"] = std::string(kRngAlgorithm);
  rng_info["seed"] = vo.seed;
  report.results["rng"] = rng_info;
  report.results["cases"] = vo.cases;
  report.results["steps"] = vo.steps;

  SplitMix64 rng(vo.seed);
  int agreements = 0;
  int disagreements = 0;
  int inconclusive = 0;
  OrderedJson failures = OrderedJson::array();

  for (int case_index = 0; case_index < vo.cases; ++case_index) {
    Matrix a = fixed_matrix ? *fixed_matrix
               : vo.random_class == "class1"
                   ? random_class1(rng, vo.n)
                   : random_class2(rng, vo.n);
    if (!fixed_matrix && vo.random_class == "class2" && vo.force_unit_prob > 0.0) {
      const Permutation pi = extract_permutation(a);
      for (const auto& cycle : cycle_decomposition(pi).cycles) {
        if (rng.chance(vo.force_unit_prob)) force_unit_cycle(a, cycle);
      }
    }
    const IdempotentMeasure x0 = random_measure(rng, a.size(), vo.neg_inf_prob);
    const VerificationReport vr = verify(a, x0, vo.steps, opts.tol);
    if (vr.agree) {
      ++agreements;
    } else {
      ++disagreements;
      OrderedJson failure;
      failure["case"] = case_index;
      failure["matrix"] = OrderedJson::parse(matrix_to_json(a));
      failure["x0"] = measure_to_spec(x0.coords());
      failure["report"] = verification_json(vr);
      failures.push_back(failure);
    }
    if (vr.inconclusive) ++inconclusive;
  }

  report.results["agreements"] = agreements;
  report.results["disagreements"] = disagreements;
  report.results["cases_with_inconclusive_checks"] = inconclusive;
  report.results["failures"] = failures;
  emit(report, opts, started);
  return disagreements == 0 ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linear operators on the simplex of idempotent measures: "
               "classification, fixed points, trajectory dynamics"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opts;
  if (const char* env = std::getenv("IDEMDYN_TOL")) {
    try {
      opts.tol = std::stod(env);
    } catch (...) {
      std::cerr << "warning: ignoring unparsable IDEMDYN_TOL\n";
    }
  }
  app.add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--tol", opts.tol, "numeric tolerance (overrides IDEMDYN_TOL)")
      ->capture_default_str();
  app.add_flag("--timing", opts.timing, "include wall-clock timing in the report");

  std::string matrix_path;
  std::string x0_spec;
  std::string csv_path;
  std::string dot_path;
  int steps = 100;

  auto* classify_cmd = app.add_subcommand("classify", "decide class1 / class2 / neither");
  classify_cmd->add_option("matrix", matrix_path, "matrix file (JSON)")->required();

  auto* fixed_cmd = app.add_subcommand("fixed-points", "closed-form fixed-point set");
  fixed_cmd->add_option("matrix", matrix_path, "matrix file (JSON)")->required();

  auto* sim_cmd = app.add_subcommand("simulate", "iterate the trajectory");
  sim_cmd->add_option("matrix", matrix_path, "matrix file (JSON)")->required();
  sim_cmd->add_option("--x0", x0_spec, "initial measure, e.g. 0,-1.5,-inf")->required();
  sim_cmd->add_option("--steps", steps, "iteration count")->capture_default_str();
  sim_cmd->add_option("--csv", csv_path, "write the trajectory as CSV");

  auto* predict_cmd = app.add_subcommand("predict", "closed-form limit prediction");
  predict_cmd->add_option("matrix", matrix_path, "matrix file (JSON)")->required();
  predict_cmd->add_option("--x0", x0_spec, "initial measure")->required();

  auto* graph_cmd = app.add_subcommand("graph", "pseudograph, cycles, longest path");
  graph_cmd->add_option("matrix", matrix_path, "matrix file (JSON)")->required();
  graph_cmd->add_option("--dot", dot_path, "write a DOT export");

  VerifyOptions vo;
  auto* verify_cmd = app.add_subcommand("verify", "differential prediction-vs-simulation campaign");
  verify_cmd->add_option("matrix", vo.matrix_path, "matrix file (JSON)");
  verify_cmd->add_option("--random", vo.random_class, "generate random matrices")
      ->check(CLI::IsMember({"class1", "class2"}));
  verify_cmd->add_option("--n", vo.n, "dimension for --random")->capture_default_str();
  verify_cmd->add_option("--cases", vo.cases, "number of cases")->capture_default_str();
  verify_cmd->add_option("--seed", vo.seed, "PRNG seed")->capture_default_str();
  verify_cmd->add_option("--steps", vo.steps, "simulation horizon per case")
      ->capture_default_str();
  verify_cmd->add_option("--neg-inf-prob", vo.neg_inf_prob,
                         "per-coordinate probability of a -inf seed")
      ->capture_default_str();
  verify_cmd->add_option("--force-unit-prob", vo.force_unit_prob,
                         "probability of rescaling each cycle to product 1 (class2)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(matrix_path, opts);
    if (fixed_cmd->parsed()) return cmd_fixed_points(matrix_path, opts);
    if (sim_cmd->parsed()) return cmd_simulate(matrix_path, x0_spec, steps, csv_path, opts);
    if (predict_cmd->parsed()) return cmd_predict(matrix_path, x0_spec, opts);
    if (graph_cmd->parsed()) return cmd_graph(matrix_path, dot_path, opts);
    if (verify_cmd->parsed()) {
      if (vo.matrix_path.empty() == vo.random_class.empty()) {
        std::cerr << "verify: pass a matrix file or --random class1|class2 (not both)\n";
        return kExitParse;
      }
      return cmd_verify(vo, opts);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return kExitParse;
}
