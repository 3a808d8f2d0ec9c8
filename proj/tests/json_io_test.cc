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

#include "reciprocal/json_io.hpp"

#include <filesystem>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles/brute_force.hpp"

namespace reciprocal {
namespace {

TEST(JsonIoTest, InstanceRoundTrip) {
  std::mt19937_64 rng(71);
  const Instance inst = oracle::random_instance(
      3, 4, ExaminationFunction{ExamKind::kLogarithmic, 2}, rng);
  const nlohmann::json j = instance_to_json(inst);
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["exam"]["kind"], "log");
  EXPECT_EQ(j["exam"]["K"], 2);
  const Instance back = instance_from_json(nlohmann::json::parse(dump_json(j)));
  EXPECT_EQ(back.p1(), inst.p1());
  EXPECT_EQ(back.p2(), inst.p2());
  EXPECT_EQ(back.exam(), inst.exam());
}

TEST(JsonIoTest, NoCutoffIsNull) {
  const nlohmann::json j = instance_to_json(oracle::example_one(0.5));
  EXPECT_TRUE(j["exam"]["K"].is_null());
  EXPECT_EQ(j["exam"]["kind"], "inv");
  EXPECT_FALSE(instance_from_json(j).exam().cutoff.has_value());
}

TEST(JsonIoTest, PolicyRoundTrip) {
  std::mt19937_64 rng(72);
  const Policy pol = oracle::random_policy(3, 2, rng);
  const Policy back = policy_from_json(
      nlohmann::json::parse(dump_json(policy_to_json(pol))));
  ASSERT_EQ(back.left.size(), 3u);
  ASSERT_EQ(back.right.size(), 2u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(back.left[i], pol.left[i]);
  for (int j = 0; j < 2; ++j) EXPECT_EQ(back.right[j], pol.right[j]);
}

TEST(JsonIoTest, RejectsMalformedInstances) {
  nlohmann::json j = instance_to_json(oracle::example_one(0.5));
  nlohmann::json missing = j;
  missing.erase("p2");
  EXPECT_THROW(instance_from_json(missing), std::invalid_argument);
  nlohmann::json ragged = j;
  ragged["p2"] = nlohmann::json::array({nlohmann::json::array({1.0})});
  EXPECT_THROW(instance_from_json(ragged), std::invalid_argument);
  nlohmann::json text = j;
  text["p1"][0][0] = "high";
  EXPECT_THROW(instance_from_json(text), std::invalid_argument);
  nlohmann::json kind = j;
  kind["exam"]["kind"] = "exp";
  EXPECT_THROW(instance_from_json(kind), std::invalid_argument);
  EXPECT_THROW(policy_from_json(nlohmann::json::object()), std::invalid_argument);
}

TEST(JsonIoTest, FileHelpers) {
  const auto path = std::filesystem::temp_directory_path() / "reciprocal_io.json";
  write_text_file(path, dump_json(instance_to_json(oracle::example_one(0.25))));
  const Instance inst = instance_from_json(read_json_file(path));
  EXPECT_DOUBLE_EQ(inst.p2()(0, 1), 0.75);
  std::filesystem::remove(path);
  EXPECT_THROW(read_json_file(path), std::runtime_error);
}

TEST(JsonIoTest, EnvyReportFields) {
  EnvyReport r;
  r.left_envy_pairs = 2;
  r.max_left_envy = 0.5;
  const nlohmann::json j = envy_report_to_json(r);
  EXPECT_EQ(j["left_envy_pairs"], 2);
  EXPECT_EQ(j["right_envy_pairs"], 0);
  EXPECT_EQ(j["max_left_envy"], 0.5);
  EXPECT_EQ(j["tolerance"], kDefaultEnvyTolerance);
}

}  // namespace
}  // namespace reciprocal
