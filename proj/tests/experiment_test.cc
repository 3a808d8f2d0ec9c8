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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles/brute_force.hpp"
#include "reciprocal/json_io.hpp"
#include "reciprocal/synth.hpp"

namespace reciprocal {
namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(RunSingleTest, ExampleOneNaive) {
  const ExperimentRecord r =
      run_single(oracle::example_one(0.5), Method::kNaive, RunOptions{});
  EXPECT_FALSE(r.failed());
  EXPECT_DOUBLE_EQ(r.expected_matches, 1.25);
  EXPECT_EQ(r.envy_left, 1);
  EXPECT_EQ(r.envy_right, 0);
  EXPECT_EQ(r.runtime_ms, 0.0);
}

TEST(RunSingleTest, ExampleOneUniform) {
  const ExperimentRecord r =
      run_single(oracle::example_one(0.5), Method::kUniform, RunOptions{});
  EXPECT_DOUBLE_EQ(r.expected_matches, 1.125);
  EXPECT_EQ(r.envy_left, 0);
  EXPECT_EQ(r.envy_right, 0);
}

TEST(RunSingleTest, UniformAlwaysEnvyFree) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = synth_instance(SynthSpec{6, 5, 0.5, {}, seed});
    const ExperimentRecord r = run_single(inst, Method::kUniform, RunOptions{});
    EXPECT_EQ(r.envy_left + r.envy_right, 0);
  }
}

TEST(RunSingleTest, SolverFailureBecomesErrorRecord) {
  RunOptions options;
  options.iter_lp_depth = 0;  // rejected by IterLP
  const ExperimentRecord r =
      run_single(oracle::example_one(0.5), Method::kIterLp, options);
  EXPECT_TRUE(r.failed());
  EXPECT_TRUE(std::isnan(r.expected_matches));
}

TEST(MethodTest, Names) {
  for (const Method m : kAllMethods) EXPECT_EQ(parse_method(method_name(m)), m);
  EXPECT_THROW(parse_method("tu"), ConfigError);
}

ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.methods = {Method::kNaive};
  cfg.n_values = {2};
  cfg.lambdas = {0.0, 1.0};
  cfg.exams = {ExamKind::kInverse};
  cfg.trials = 2;
  return cfg;
}

TEST(ExperimentTest, RowCount) {
  const auto records = run_experiment_records(tiny_config());
  EXPECT_EQ(records.size(), 4u);
  const auto lines = lines_of(records_to_csv(records));
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0], kExperimentCsvHeader);
}

TEST(ExperimentTest, SortedAndPaired) {
  ExperimentConfig cfg = tiny_config();
  cfg.methods = {Method::kNsw, Method::kUniform, Method::kProd};
  cfg.exams = {ExamKind::kLogarithmic, ExamKind::kInverse};
  cfg.n_values = {4, 3};
  cfg.m = 3;
  cfg.options.solver.max_iterations = 5;
  const auto records = run_experiment_records(cfg);
  ASSERT_EQ(records.size(), 3u * 2 * 2 * 2 * 2);
  auto key = [](const ExperimentRecord& r) {
    return std::make_tuple(r.n, static_cast<int>(r.exam), r.lambda,
                           static_cast<int>(r.method), r.trial);
  };
  for (std::size_t k = 1; k < records.size(); ++k)
    EXPECT_LT(key(records[k - 1]), key(records[k]));
  for (const auto& r : records) {
    EXPECT_EQ(r.seed, cfg.base_seed + static_cast<std::uint64_t>(r.trial));
    EXPECT_GE(r.expected_matches, 0.0);
  }
}

TEST(ExperimentTest, ByteIdenticalReruns) {
  ExperimentConfig cfg = tiny_config();
  cfg.methods = {Method::kSw, Method::kIterLp};
  cfg.n_values = {5};
  cfg.m = 4;
  cfg.options.solver.max_iterations = 10;
  EXPECT_EQ(records_to_csv(run_experiment_records(cfg)),
            records_to_csv(run_experiment_records(cfg)));
}

TEST(ExperimentTest, WritesCsvWithoutErrorLogOnSuccess) {
  const auto dir = std::filesystem::temp_directory_path() / "reciprocal_exp";
  std::filesystem::create_directories(dir);
  ExperimentConfig cfg = tiny_config();
  cfg.output = (dir / "out.csv").string();
  std::filesystem::remove(cfg.output + ".errors.log");
  const auto records = run_experiment(cfg);
  std::ifstream in(cfg.output);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str(), records_to_csv(records));
  EXPECT_EQ(lines_of(text.str()).size(), 5u);
  EXPECT_FALSE(std::filesystem::exists(cfg.output + ".errors.log"));
  std::filesystem::remove_all(dir);
}

TEST(ExperimentTest, FailedRecordKeepsSchema) {
  ExperimentRecord ok =
      run_single(oracle::example_one(0.5), Method::kUniform, RunOptions{});
  ok.n = 2;
  ok.m = 1;
  RunOptions broken;
  broken.iter_lp_depth = 0;
  ExperimentRecord bad =
      run_single(oracle::example_one(0.5), Method::kIterLp, broken);
  bad.n = 2;
  bad.m = 1;
  bad.trial = 1;
  bad.seed = 1;
  const auto lines = lines_of(records_to_csv({ok, bad}));
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[1], "uniform,2,1,0,inv,0,1.125,0,0,0,0,0,0");
  EXPECT_EQ(lines[2], "iterlp,2,1,0,inv,1,nan,nan,nan,nan,nan,0,1");
}

TEST(ExperimentPropertyTest, WelfareMethodLeadsAtModeratePopularity) {
  int batches_ok = 0;
  for (int batch = 0; batch < 10; ++batch) {
    ExperimentConfig cfg;
    cfg.lambdas = {0.6};
    cfg.methods = {Method::kSw, Method::kNsw};
    cfg.base_seed = 1000 * static_cast<std::uint64_t>(batch);
    bool ok = true;
    for (const ExamKind exam : {ExamKind::kInverse, ExamKind::kLogarithmic}) {
      cfg.exams = {exam};
      double sw = 0, nsw = 0;
      for (const auto& r : run_experiment_records(cfg))
        (r.method == Method::kSw ? sw : nsw) += r.expected_matches;
      ok = ok && sw >= nsw;
    }
    batches_ok += ok ? 1 : 0;
  }
  EXPECT_GE(batches_ok, 8);
}

TEST(ExperimentConfigTest, JsonRoundTrip) {
  ExperimentConfig cfg = tiny_config();
  cfg.cutoff = 3;
  cfg.options.solver.tolerance = 1e-5;
  cfg.options.envy_tolerance = 1e-6;
  cfg.output = "x.csv";
  const ExperimentConfig back =
      experiment_config_from_json(experiment_config_to_json(cfg));
  EXPECT_EQ(back.n_values, cfg.n_values);
  EXPECT_EQ(back.lambdas, cfg.lambdas);
  EXPECT_EQ(back.methods, cfg.methods);
  EXPECT_EQ(back.cutoff, cfg.cutoff);
  EXPECT_EQ(back.options.solver.tolerance, 1e-5);
  EXPECT_EQ(back.options.envy_tolerance, 1e-6);
  EXPECT_EQ(back.output, "x.csv");
  EXPECT_EQ(dump_json(experiment_config_to_json(back)),
            dump_json(experiment_config_to_json(cfg)));
}

TEST(ExperimentConfigTest, RejectsBadFields) {
  EXPECT_THROW(experiment_config_from_json({{"trails", 3}}), ConfigError);
  EXPECT_THROW(experiment_config_from_json({{"trials", "many"}}), ConfigError);
  EXPECT_THROW(experiment_config_from_json({{"methods", {"tu"}}}), ConfigError);
  EXPECT_THROW(experiment_config_from_json({{"solver", {{"step", "fast"}}}}),
               ConfigError);
  ExperimentConfig cfg;
  cfg.trials = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = ExperimentConfig{};
  cfg.lambdas = {1.5};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = ExperimentConfig{};
  cfg.methods.clear();
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(FormatTest, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(std::nan("")), "nan");
}

}  // namespace
}  // namespace reciprocal
