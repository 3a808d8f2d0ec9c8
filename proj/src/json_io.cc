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

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace reciprocal {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& x) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < x.cols(); ++c) row.push_back(x(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw std::invalid_argument(std::string(what) +
                                ": expected a non-empty array of rows");
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j.front().size();
  Eigen::MatrixXd x(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw std::invalid_argument(std::string(what) + ": row " +
                                  std::to_string(r) + " has wrong length");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) {
        throw std::invalid_argument(std::string(what) + ": non-numeric entry");
      }
      x(r, c) = j[r][c].get<double>();
    }
  }
  return x;
}

json instance_to_json(const Instance& inst) {
  json exam = {{"kind", std::string(exam_kind_name(inst.exam().kind))}};
  exam["K"] = inst.exam().cutoff ? json(*inst.exam().cutoff) : json(nullptr);
  return json{{"n", inst.n()},
              {"m", inst.m()},
              {"p1", matrix_to_json(inst.p1())},
              {"p2", matrix_to_json(inst.p2())},
              {"exam", exam}};
}

Instance instance_from_json(const json& j) {
  for (const char* key : {"n", "m", "p1", "p2", "exam"}) {
    if (!j.contains(key)) {
      throw std::invalid_argument(std::string("instance: missing field '") +
                                  key + "'");
    }
  }
  ExaminationFunction exam;
  exam.kind = parse_exam_kind(j.at("exam").at("kind").get<std::string>());
  if (j.at("exam").contains("K") && !j.at("exam").at("K").is_null()) {
    exam.cutoff = j.at("exam").at("K").get<int>();
  }
  Eigen::MatrixXd p1 = matrix_from_json(j.at("p1"), "p1");
  Eigen::MatrixXd p2 = matrix_from_json(j.at("p2"), "p2");
  const int n = j.at("n").get<int>();
  const int m = j.at("m").get<int>();
  if (p1.rows() != n || p1.cols() != m) {
    throw std::invalid_argument("instance: p1 must be n x m");
  }
  return Instance(std::move(p1), std::move(p2), exam);
}

json policy_to_json(const Policy& pol) {
  json a = json::array();
  for (const auto& x : pol.left) a.push_back(matrix_to_json(x));
  json b = json::array();
  for (const auto& x : pol.right) b.push_back(matrix_to_json(x));
  return json{{"A", std::move(a)}, {"B", std::move(b)}};
}

Policy policy_from_json(const json& j) {
  if (!j.contains("A") || !j.contains("B")) {
    throw std::invalid_argument("policy: expected fields 'A' and 'B'");
  }
  Policy pol;
  for (const auto& x : j.at("A")) pol.left.push_back(matrix_from_json(x, "A"));
  for (const auto& x : j.at("B")) {
    pol.right.push_back(matrix_from_json(x, "B"));
  }
  return pol;
}

json envy_report_to_json(const EnvyReport& report) {
  return json{{"left_envy_pairs", report.left_envy_pairs},
              {"right_envy_pairs", report.right_envy_pairs},
              {"max_left_envy", report.max_left_envy},
              {"max_right_envy", report.max_right_envy},
              {"tolerance", report.tolerance}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& err) {
    throw std::runtime_error(path.string() + ": " + err.what());
  }
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace reciprocal
