// Copyright 2026 The Reciprocal Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: synth, solve, audit, experiment, ingest.
//
// Exit codes: 0 success, 1 usage error, 2 runtime failure.

#include <cmath>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "reciprocal/als.hpp"
#include "reciprocal/experiment.hpp"
#include "reciprocal/fairness.hpp"
#include "reciprocal/frank_wolfe.hpp"
#include "reciprocal/json_io.hpp"
#include "reciprocal/synth.hpp"
#include "reciprocal/welfare.hpp"

namespace {

using namespace reciprocal;
using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

ExaminationFunction exam_from_flags(const std::string& kind,
                                    std::optional<int> cutoff) {
  try {
    return ExaminationFunction{parse_exam_kind(kind), cutoff};
  } catch (const std::invalid_argument& err) {
    throw UsageError(err.what());
  }
}

struct SynthArgs {
  int n = 20;
  int m = 20;
  double lambda = 0.0;
  std::string exam = "inv";
  std::optional<int> cutoff;
  std::uint64_t seed = 0;
  std::string out;
};

struct SolveArgs {
  std::string instance;
  std::string method = "nsw";
  int iterations = 100;
  double tolerance = 1e-6;
  std::string step = "open_loop";
  double eta = 1.0;
  int inner_steps = 1;
  double floor = 1e-12;
  std::string init = "uniform";
  std::uint64_t seed = 0;
  std::optional<int> depth;
  double tau = kDefaultEnvyTolerance;
  std::string out;
  std::string trace;
};

struct AuditArgs {
  std::string instance;
  std::string policy;
  double tau = kDefaultEnvyTolerance;
  std::string out;
};

struct ExperimentArgs {
  std::string config;
  std::string out;
};

struct IngestArgs {
  std::string log;
  std::string exam = "inv";
  std::optional<int> cutoff;
  AlsConfig als;
  std::string out;
};

void run_synth(const SynthArgs& a) {
  SynthSpec spec{a.n, a.m, a.lambda, exam_from_flags(a.exam, a.cutoff),
                 a.seed};
  try {
    spec.validate();
  } catch (const std::invalid_argument& err) {
    throw UsageError(err.what());
  }
  emit(dump_json(instance_to_json(synth_instance(spec))), a.out);
}

void run_solve(const SolveArgs& a) {
  Method method;
  RunOptions options;
  try {
    method = parse_method(a.method);
    options.solver.max_iterations = a.iterations;
    options.solver.tolerance = a.tolerance;
    if (a.step == "open_loop") {
      options.solver.step = StepRule::kOpenLoop;
    } else if (a.step == "constant") {
      options.solver.step = StepRule::kConstant;
    } else {
      throw UsageError("--step must be open_loop or constant");
    }
    options.solver.constant_step = a.eta;
    options.solver.inner_steps = a.inner_steps;
    options.solver.utility_floor = a.floor;
    if (a.init == "uniform") {
      options.solver.init = Initialization::kUniform;
    } else if (a.init == "random") {
      options.solver.init = Initialization::kRandom;
    } else {
      throw UsageError("--init must be uniform or random");
    }
    options.solver.seed = a.seed;
    options.solver.validate();
    options.iter_lp_depth = a.depth;
    options.envy_tolerance = a.tau;
    if (a.tau < 0) throw UsageError("--tau must be >= 0");
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& err) {
    throw UsageError(err.what());
  }

  const Instance inst = instance_from_json(read_json_file(a.instance));
  Policy pol;
  json metrics;
  if (method == Method::kSw || method == Method::kNsw) {
    SolverConfig cfg = options.solver;
    cfg.objective =
        method == Method::kSw ? Objective::kSocialWelfare : Objective::kNash;
    SolveResult result = solve(inst, cfg);
    pol = std::move(result.policy);
    metrics["iterations"] = result.trace.iterations;
    metrics["converged"] = result.trace.converged;
    if (!a.trace.empty()) write_text_file(a.trace, trace_to_csv(result.trace));
  } else {
    pol = make_policy(inst, method, options);
  }
  require_valid_policy(inst, pol);
  const Exposure e = compute_exposure(inst, pol);
  metrics["method"] = std::string(method_name(method));
  metrics["expected_matches"] = social_welfare(inst, e);
  auto finite_or_null = [](double x) {
    return std::isfinite(x) ? json(x) : json(nullptr);
  };
  metrics["log_nsw_left"] = finite_or_null(log_nsw(inst, e, Side::kLeft));
  metrics["log_nsw_right"] = finite_or_null(log_nsw(inst, e, Side::kRight));
  metrics["envy"] = envy_report_to_json(envy_audit(inst, e, a.tau));
  if (!a.out.empty()) write_text_file(a.out, dump_json(policy_to_json(pol)));
  std::cout << dump_json(metrics);
}

void run_audit(const AuditArgs& a) {
  if (a.tau < 0) throw UsageError("--tau must be >= 0");
  const Instance inst = instance_from_json(read_json_file(a.instance));
  const Policy pol = policy_from_json(read_json_file(a.policy));
  require_valid_policy(inst, pol);
  emit(dump_json(envy_report_to_json(envy_audit(inst, pol, a.tau))), a.out);
}

void run_experiment_cmd(const ExperimentArgs& a) {
  ExperimentConfig cfg;
  {
    const json j = read_json_file(a.config);
    try {
      cfg = experiment_config_from_json(j);
      if (!a.out.empty()) cfg.output = a.out;
      cfg.validate();
    } catch (const ConfigError& err) {
      throw UsageError(err.what());
    }
  }
  const auto records = run_experiment(cfg);
  std::size_t failed = 0;
  for (const auto& r : records) failed += r.failed() ? 1 : 0;
  std::cerr << "wrote " << records.size() << " rows to " << cfg.output;
  if (failed) std::cerr << " (" << failed << " failed, see .errors.log)";
  std::cerr << '\n';
}

void run_ingest(const IngestArgs& a) {
  const ExaminationFunction exam = exam_from_flags(a.exam, a.cutoff);
  try {
    a.als.validate();
  } catch (const std::invalid_argument& err) {
    throw UsageError(err.what());
  }
  const InteractionLog log = InteractionLog::read_csv(a.log);
  const PreferenceEstimate est = fit_preferences(log, a.als);
  const Instance inst(est.p1, est.p2, exam);
  emit(dump_json(instance_to_json(inst)), a.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reciprocal recommendation policies for two-sided markets"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic market");
  synth_cmd->add_option("--n", synth.n, "left-side agents")->capture_default_str();
  synth_cmd->add_option("--m", synth.m, "right-side agents")->capture_default_str();
  synth_cmd->add_option("--lambda", synth.lambda, "popularity weight in [0,1]")
      ->capture_default_str();
  synth_cmd->add_option("--exam", synth.exam, "inv|log")->capture_default_str();
  synth_cmd->add_option("--K", synth.cutoff, "examination cutoff");
  synth_cmd->add_option("--seed", synth.seed)->capture_default_str();
  synth_cmd->add_option("--out", synth.out, "instance JSON (default stdout)");

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "compute a policy");
  solve_cmd->add_option("--instance", solve_args.instance)->required();
  solve_cmd->add_option("--method", solve_args.method,
                        "uniform|naive|prod|iterlp|sw|nsw")
      ->capture_default_str();
  solve_cmd->add_option("--iterations", solve_args.iterations)
      ->capture_default_str();
  solve_cmd->add_option("--tolerance", solve_args.tolerance,
                        "relative Frank-Wolfe gap")
      ->capture_default_str();
  solve_cmd->add_option("--step", solve_args.step, "open_loop|constant")
      ->capture_default_str();
  solve_cmd->add_option("--eta", solve_args.eta, "constant step size")
      ->capture_default_str();
  solve_cmd->add_option("--inner-steps", solve_args.inner_steps)
      ->capture_default_str();
  solve_cmd->add_option("--floor", solve_args.floor, "Nash utility floor")
      ->capture_default_str();
  solve_cmd->add_option("--init", solve_args.init, "uniform|random")
      ->capture_default_str();
  solve_cmd->add_option("--seed", solve_args.seed)->capture_default_str();
  solve_cmd->add_option("--depth", solve_args.depth, "IterLP rounds");
  solve_cmd->add_option("--tau", solve_args.tau, "envy tolerance")
      ->capture_default_str();
  solve_cmd->add_option("--out", solve_args.out, "policy JSON");
  solve_cmd->add_option("--trace", solve_args.trace, "solver trace CSV");

  AuditArgs audit;
  auto* audit_cmd = app.add_subcommand("audit", "envy audit of a policy");
  audit_cmd->add_option("--instance", audit.instance)->required();
  audit_cmd->add_option("--policy", audit.policy)->required();
  audit_cmd->add_option("--tau", audit.tau, "envy tolerance")
      ->capture_default_str();
  audit_cmd->add_option("--out", audit.out, "report JSON (default stdout)");

  ExperimentArgs experiment;
  auto* experiment_cmd =
      app.add_subcommand("experiment", "run a sweep and write its CSV");
  experiment_cmd->add_option("--config", experiment.config)->required();
  experiment_cmd->add_option("--out", experiment.out, "override output path");

  IngestArgs ingest;
  auto* ingest_cmd =
      app.add_subcommand("ingest", "estimate preferences from interactions");
  ingest_cmd->add_option("--log", ingest.log, "interactions CSV")->required();
  ingest_cmd->add_option("--exam", ingest.exam, "inv|log")->capture_default_str();
  ingest_cmd->add_option("--K", ingest.cutoff, "examination cutoff");
  ingest_cmd->add_option("--factors", ingest.als.factors)->capture_default_str();
  ingest_cmd->add_option("--regularization", ingest.als.regularization)
      ->capture_default_str();
  ingest_cmd->add_option("--alpha", ingest.als.alpha)->capture_default_str();
  ingest_cmd->add_option("--iterations", ingest.als.iterations)
      ->capture_default_str();
  ingest_cmd->add_option("--seed", ingest.als.seed)->capture_default_str();
  ingest_cmd->add_option("--out", ingest.out, "instance JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*synth_cmd) run_synth(synth);
    if (*solve_cmd) run_solve(solve_args);
    if (*audit_cmd) run_audit(audit);
    if (*experiment_cmd) run_experiment_cmd(experiment);
    if (*ingest_cmd) run_ingest(ingest);
  } catch (const UsageError& err) {
    std::cerr << "usage error: " << err.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitFailure;
  }
  return 0;
}
