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

#include <filesystem>
#include <string>

#include <json.hpp>

#include "reciprocal/fairness.hpp"
#include "reciprocal/instance.hpp"
#include "reciprocal/policy.hpp"

namespace reciprocal {

// Instance file:
//   {"n": .., "m": .., "p1": [[..] x n], "p2": [[..] x m],
//    "exam": {"kind": "inv" | "log", "K": int | null}}
nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

// Policy file: {"A": n x m x m, "B": m x n x n}.
nlohmann::json policy_to_json(const Policy& pol);
Policy policy_from_json(const nlohmann::json& j);

nlohmann::json envy_report_to_json(const EnvyReport& report);

nlohmann::json matrix_to_json(const Eigen::MatrixXd& x);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, const char* what);

// Reads/writes whole JSON documents; throws std::runtime_error on I/O or
// parse failures, naming the path.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     const std::string& contents);

// Serialization shared by all writers: 2-space indent, shortest round-trip
// decimal doubles, trailing newline.
std::string dump_json(const nlohmann::json& j);

}  // namespace reciprocal
