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

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "reciprocal/fairness.hpp"
#include "reciprocal/frank_wolfe.hpp"
#include "reciprocal/instance.hpp"
#include "reciprocal/policy.hpp"

namespace reciprocal {

enum class Method { kUniform, kNaive, kProd, kIterLp, kSw, kNsw };

inline constexpr Method kAllMethods[] = {Method::kUniform, Method::kNaive,
                                         Method::kProd,    Method::kIterLp,
                                         Method::kSw,      Method::kNsw};

std::string_view method_name(Method method);
Method parse_method(std::string_view token);

// A configuration value is missing or out of range; the message names the
// field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Knobs shared by every method when producing and scoring a policy.
struct RunOptions {
  SolverConfig solver;
  std::optional<int> iter_lp_depth;  // default min(n, m)
  double envy_tolerance = kDefaultEnvyTolerance;
};

// Produces the method's policy on `inst`.
Policy make_policy(const Instance& inst, Method method,
                   const RunOptions& options);

struct ExperimentRecord {
  Method method = Method::kUniform;
  int n = 0;
  int m = 0;
  double lambda = 0.0;
  ExamKind exam = ExamKind::kInverse;
  int trial = 0;
  double expected_matches = 0.0;
  long envy_left = 0;
  long envy_right = 0;
  double max_envy_left = 0.0;
  double max_envy_right = 0.0;
  double runtime_ms = 0.0;
  std::uint64_t seed = 0;
  std::string error;  // non-empty: metrics are NaN in the CSV

  bool failed() const { return !error.empty(); }
};

// Builds, validates, audits and scores one policy. Failures are returned as
// records with `error` set, never thrown. Only method, n, m, exam and the
// metrics are filled; the caller owns lambda, trial and seed.
ExperimentRecord run_single(const Instance& inst, Method method,
                            const RunOptions& options,
                            bool record_runtime = false);

struct ExperimentConfig {
  std::vector<int> n_values{20};
  int m = 20;
  std::vector<double> lambdas{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  std::vector<ExamKind> exams{ExamKind::kInverse, ExamKind::kLogarithmic};
  std::optional<int> cutoff;  // examination truncation K
  std::vector<Method> methods{std::begin(kAllMethods), std::end(kAllMethods)};
  int trials = 10;
  std::uint64_t base_seed = 0;
  RunOptions options;
  // Wall-clock timing makes output bytes run-dependent, so it is opt-in;
  // runtime_ms is 0 otherwise.
  bool record_runtime = false;
  // When set, the grid over n and lambda is replaced by this instance file
  // (lambda is written as nan).
  std::optional<std::string> instance_path;
  std::string output = "experiment.csv";

  // Throws ConfigError naming the first invalid field.
  void validate() const;
};

// Unknown keys are rejected so that typos do not silently fall back to
// defaults.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
nlohmann::json experiment_config_to_json(const ExperimentConfig& cfg);

// All records of the sweep, sorted by (n, exam, lambda, method, trial), with
// methods in kAllMethods order and exams inv before log. Every method in a
// cell sees the same instance per trial (seed = base_seed + trial).
std::vector<ExperimentRecord> run_experiment_records(
    const ExperimentConfig& cfg);

inline constexpr std::string_view kExperimentCsvHeader =
    "method,n,m,lambda,exam,trial,expected_matches,envy_left,envy_right,"
    "max_envy_left,max_envy_right,runtime_ms,seed";

std::string records_to_csv(const std::vector<ExperimentRecord>& records);

// Writes cfg.output and, when some record failed, cfg.output + ".errors.log"
// with one line per failure. Returns the records.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg);

// Shortest decimal that round-trips; "nan" for NaN.
std::string format_double(double x);

}  // namespace reciprocal
