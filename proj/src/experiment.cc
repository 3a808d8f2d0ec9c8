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

#include "reciprocal/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "reciprocal/baselines.hpp"
#include "reciprocal/json_io.hpp"
#include "reciprocal/synth.hpp"
#include "reciprocal/welfare.hpp"

namespace reciprocal {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int method_rank(Method method) {
  for (std::size_t k = 0; k < std::size(kAllMethods); ++k) {
    if (kAllMethods[k] == method) return static_cast<int>(k);
  }
  return -1;
}

template <typename T>
T field(const json& j, const char* key, const T& fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config field '") + key +
                      "' has the wrong type");
  }
}

void reject_unknown(const json& j, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    const bool ok = std::any_of(known.begin(), known.end(),
                                [&](const char* k) { return key == k; });
    if (!ok) throw ConfigError(where + ": unknown field '" + key + "'");
  }
}

SolverConfig solver_from_json(const json& j) {
  reject_unknown(j,
                 {"max_iterations", "tolerance", "step", "constant_step",
                  "utility_floor", "inner_steps", "init", "seed"},
                 "solver");
  SolverConfig s;
  s.max_iterations = field(j, "max_iterations", s.max_iterations);
  s.tolerance = field(j, "tolerance", s.tolerance);
  s.constant_step = field(j, "constant_step", s.constant_step);
  s.utility_floor = field(j, "utility_floor", s.utility_floor);
  s.inner_steps = field(j, "inner_steps", s.inner_steps);
  s.seed = field(j, "seed", s.seed);
  const auto step = field<std::string>(j, "step", "open_loop");
  if (step == "open_loop") {
    s.step = StepRule::kOpenLoop;
  } else if (step == "constant") {
    s.step = StepRule::kConstant;
  } else {
    throw ConfigError("solver.step must be open_loop or constant");
  }
  const auto init = field<std::string>(j, "init", "uniform");
  if (init == "uniform") {
    s.init = Initialization::kUniform;
  } else if (init == "random") {
    s.init = Initialization::kRandom;
  } else {
    throw ConfigError("solver.init must be uniform or random");
  }
  return s;
}

json solver_to_json(const SolverConfig& s) {
  return json{{"max_iterations", s.max_iterations},
              {"tolerance", s.tolerance},
              {"step", s.step == StepRule::kOpenLoop ? "open_loop" : "constant"},
              {"constant_step", s.constant_step},
              {"utility_floor", s.utility_floor},
              {"inner_steps", s.inner_steps},
              {"init", s.init == Initialization::kUniform ? "uniform" : "random"},
              {"seed", s.seed}};
}

ExperimentRecord failure(Method method, const Instance& inst,
                         std::string message) {
  ExperimentRecord r;
  r.method = method;
  r.n = inst.n();
  r.m = inst.m();
  r.exam = inst.exam().kind;
  r.expected_matches = r.max_envy_left = r.max_envy_right = kNaN;
  r.error = std::move(message);
  return r;
}

}  // namespace

std::string_view method_name(Method method) {
  switch (method) {
    case Method::kUniform: return "uniform";
    case Method::kNaive: return "naive";
    case Method::kProd: return "prod";
    case Method::kIterLp: return "iterlp";
    case Method::kSw: return "sw";
    case Method::kNsw: return "nsw";
  }
  return "?";
}

Method parse_method(std::string_view token) {
  for (Method m : kAllMethods) {
    if (method_name(m) == token) return m;
  }
  throw ConfigError("unknown method '" + std::string(token) +
                    "' (expected uniform|naive|prod|iterlp|sw|nsw)");
}

Policy make_policy(const Instance& inst, Method method,
                   const RunOptions& options) {
  switch (method) {
    case Method::kUniform:
      return uniform_policy(inst.n(), inst.m());
    case Method::kNaive:
      return naive_policy(inst);
    case Method::kProd:
      return prod_policy(inst);
    case Method::kIterLp:
      return iter_lp_policy(
          inst, options.iter_lp_depth.value_or(default_iter_lp_depth(inst)));
    case Method::kSw:
    case Method::kNsw: {
      SolverConfig cfg = options.solver;
      cfg.objective = method == Method::kSw ? Objective::kSocialWelfare
                                            : Objective::kNash;
      return solve(inst, cfg).policy;
    }
  }
  throw std::logic_error("unhandled method");
}

ExperimentRecord run_single(const Instance& inst, Method method,
                            const RunOptions& options, bool record_runtime) {
  try {
    const auto start = std::chrono::steady_clock::now();
    const Policy pol = make_policy(inst, method, options);
    const auto stop = std::chrono::steady_clock::now();
    require_valid_policy(inst, pol);
    const Exposure e = compute_exposure(inst, pol);
    const EnvyReport envy = envy_audit(inst, e, options.envy_tolerance);

    ExperimentRecord r;
    r.method = method;
    r.n = inst.n();
    r.m = inst.m();
    r.exam = inst.exam().kind;
    r.expected_matches = social_welfare(inst, e);
    r.envy_left = envy.left_envy_pairs;
    r.envy_right = envy.right_envy_pairs;
    r.max_envy_left = envy.max_left_envy;
    r.max_envy_right = envy.max_right_envy;
    if (record_runtime) {
      r.runtime_ms =
          std::chrono::duration<double, std::milli>(stop - start).count();
    }
    if (!std::isfinite(r.expected_matches)) {
      return failure(method, inst, "non-finite expected matches");
    }
    return r;
  } catch (const std::exception& err) {
    return failure(method, inst, err.what());
  }
}

void ExperimentConfig::validate() const {
  if (!instance_path) {
    if (n_values.empty()) throw ConfigError("n_values must be non-empty");
    for (int n : n_values) {
      if (n < 2) throw ConfigError("n_values entries must be >= 2");
    }
    if (m < 2) throw ConfigError("m must be >= 2");
    if (lambdas.empty()) throw ConfigError("lambdas must be non-empty");
    for (double l : lambdas) {
      if (!(l >= 0.0 && l <= 1.0)) {
        throw ConfigError("lambdas entries must lie in [0, 1]");
      }
    }
  }
  if (exams.empty()) throw ConfigError("exams must be non-empty");
  if (methods.empty()) throw ConfigError("methods must be non-empty");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (cutoff && *cutoff < 1) throw ConfigError("K must be >= 1");
  if (!(options.envy_tolerance >= 0.0)) {
    throw ConfigError("envy_tolerance must be >= 0");
  }
  if (options.iter_lp_depth && *options.iter_lp_depth < 1) {
    throw ConfigError("iterlp_depth must be >= 1");
  }
  if (output.empty()) throw ConfigError("output must be non-empty");
  try {
    options.solver.validate();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("solver: ") + err.what());
  }
}

ExperimentConfig experiment_config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"n_values", "m", "lambdas", "exams", "K", "methods",
                  "trials", "base_seed", "solver", "envy_tolerance",
                  "iterlp_depth", "record_runtime", "instance", "output"},
                 "config");
  ExperimentConfig cfg;
  cfg.n_values = field(j, "n_values", cfg.n_values);
  cfg.m = field(j, "m", cfg.m);
  cfg.lambdas = field(j, "lambdas", cfg.lambdas);
  if (j.contains("exams")) {
    cfg.exams.clear();
    for (const auto& token : field<std::vector<std::string>>(j, "exams", {})) {
      try {
        cfg.exams.push_back(parse_exam_kind(token));
      } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("exams: ") + err.what());
      }
    }
  }
  if (j.contains("K") && !j.at("K").is_null()) cfg.cutoff = field(j, "K", 0);
  if (j.contains("methods")) {
    cfg.methods.clear();
    for (const auto& token :
         field<std::vector<std::string>>(j, "methods", {})) {
      cfg.methods.push_back(parse_method(token));
    }
  }
  cfg.trials = field(j, "trials", cfg.trials);
  cfg.base_seed = field(j, "base_seed", cfg.base_seed);
  if (j.contains("solver")) cfg.options.solver = solver_from_json(j.at("solver"));
  cfg.options.envy_tolerance =
      field(j, "envy_tolerance", cfg.options.envy_tolerance);
  if (j.contains("iterlp_depth") && !j.at("iterlp_depth").is_null()) {
    cfg.options.iter_lp_depth = field(j, "iterlp_depth", 0);
  }
  cfg.record_runtime = field(j, "record_runtime", cfg.record_runtime);
  if (j.contains("instance") && !j.at("instance").is_null()) {
    cfg.instance_path = field<std::string>(j, "instance", "");
  }
  cfg.output = field(j, "output", cfg.output);
  cfg.validate();
  return cfg;
}

json experiment_config_to_json(const ExperimentConfig& cfg) {
  json exams = json::array();
  for (ExamKind e : cfg.exams) exams.push_back(std::string(exam_kind_name(e)));
  json methods = json::array();
  for (Method m : cfg.methods) methods.push_back(std::string(method_name(m)));
  return json{
      {"n_values", cfg.n_values},
      {"m", cfg.m},
      {"lambdas", cfg.lambdas},
      {"exams", exams},
      {"K", cfg.cutoff ? json(*cfg.cutoff) : json(nullptr)},
      {"methods", methods},
      {"trials", cfg.trials},
      {"base_seed", cfg.base_seed},
      {"solver", solver_to_json(cfg.options.solver)},
      {"envy_tolerance", cfg.options.envy_tolerance},
      {"iterlp_depth", cfg.options.iter_lp_depth
                           ? json(*cfg.options.iter_lp_depth)
                           : json(nullptr)},
      {"record_runtime", cfg.record_runtime},
      {"instance",
       cfg.instance_path ? json(*cfg.instance_path) : json(nullptr)},
      {"output", cfg.output}};
}

std::vector<ExperimentRecord> run_experiment_records(
    const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<ExamKind> exams = cfg.exams;
  std::sort(exams.begin(), exams.end());
  exams.erase(std::unique(exams.begin(), exams.end()), exams.end());
  std::vector<Method> methods = cfg.methods;
  std::sort(methods.begin(), methods.end(), [](Method a, Method b) {
    return method_rank(a) < method_rank(b);
  });
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());

  std::vector<ExperimentRecord> records;
  auto run_cell = [&](const Instance& base, double lambda, ExamKind exam,
                      int trial, std::uint64_t seed) {
    const Instance inst(base.p1(), base.p2(),
                        ExaminationFunction{exam, cfg.cutoff});
    RunOptions options = cfg.options;
    options.solver.seed = seed;
    for (Method method : methods) {
      ExperimentRecord r = run_single(inst, method, options, cfg.record_runtime);
      r.lambda = lambda;
      r.trial = trial;
      r.seed = seed;
      records.push_back(std::move(r));
    }
  };

  if (cfg.instance_path) {
    const Instance base = instance_from_json(read_json_file(*cfg.instance_path));
    for (ExamKind exam : exams) {
      for (int trial = 0; trial < cfg.trials; ++trial) {
        run_cell(base, kNaN, exam, trial, cfg.base_seed + trial);
      }
    }
  } else {
    std::vector<int> ns = cfg.n_values;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    std::vector<double> lambdas = cfg.lambdas;
    std::sort(lambdas.begin(), lambdas.end());
    lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
    for (int n : ns) {
      for (ExamKind exam : exams) {
        for (double lambda : lambdas) {
          for (int trial = 0; trial < cfg.trials; ++trial) {
            const std::uint64_t seed = cfg.base_seed + trial;
            const SynthSpec spec{n, cfg.m, lambda,
                                 ExaminationFunction{exam, cfg.cutoff}, seed};
            run_cell(synth_instance(spec), lambda, exam, trial, seed);
          }
        }
      }
    }
  }
  // Cells were produced in (n, exam, lambda, trial, method) order.
  std::stable_sort(records.begin(), records.end(),
                   [](const ExperimentRecord& a, const ExperimentRecord& b) {
                     if (a.n != b.n) return a.n < b.n;
                     if (a.exam != b.exam) return a.exam < b.exam;
                     if (a.lambda != b.lambda) return a.lambda < b.lambda;
                     if (a.method != b.method) {
                       return method_rank(a.method) < method_rank(b.method);
                     }
                     return a.trial < b.trial;
                   });
  return records;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string records_to_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream os;
  os << kExperimentCsvHeader << '\n';
  for (const auto& r : records) {
    os << method_name(r.method) << ',' << r.n << ',' << r.m << ','
       << format_double(r.lambda) << ',' << exam_kind_name(r.exam) << ','
       << r.trial << ',' << format_double(r.expected_matches) << ',';
    if (r.failed()) {
      os << "nan,nan,";
    } else {
      os << r.envy_left << ',' << r.envy_right << ',';
    }
    os << format_double(r.max_envy_left) << ','
       << format_double(r.max_envy_right) << ','
       << format_double(r.runtime_ms) << ',' << r.seed << '\n';
  }
  return os.str();
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
  std::vector<ExperimentRecord> records = run_experiment_records(cfg);
  write_text_file(cfg.output, records_to_csv(records));
  std::ostringstream errors;
  for (const auto& r : records) {
    if (!r.failed()) continue;
    errors << method_name(r.method) << ",n=" << r.n << ",m=" << r.m
           << ",lambda=" << format_double(r.lambda)
           << ",exam=" << exam_kind_name(r.exam) << ",trial=" << r.trial
           << ": " << r.error << '\n';
  }
  if (!errors.str().empty()) {
    write_text_file(cfg.output + ".errors.log", errors.str());
  }
  return records;
}

}  // namespace reciprocal
