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
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace reciprocal {

enum class Direction { kLeftToRight, kRightToLeft };
enum class Signal { kPositive, kNegative };

// Raised when a direction has no positive signal to fit.
class InsufficientInteractions : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Observed actions between the two sides. Ids are re-indexed densely in
// order of first appearance.
class InteractionLog {
 public:
  struct Row {
    int left = 0;
    int right = 0;
    Direction direction = Direction::kLeftToRight;
    Signal signal = Signal::kPositive;
  };

  void add(const std::string& left_id, const std::string& right_id,
           Direction direction, Signal signal);

  // CSV with header "left_id,right_id,direction,signal"; direction is lr|rl
  // and signal is pos|neg. Throws std::invalid_argument with the line number
  // on malformed input.
  static InteractionLog from_csv(std::istream& in);
  static InteractionLog read_csv(const std::filesystem::path& path);

  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<std::string>& left_ids() const { return left_ids_; }
  const std::vector<std::string>& right_ids() const { return right_ids_; }
  int positives(Direction direction) const;

 private:
  static int intern(const std::string& id, std::vector<std::string>& ids,
                    std::unordered_map<std::string, int>& index);

  std::vector<Row> rows_;
  std::vector<std::string> left_ids_;
  std::vector<std::string> right_ids_;
  std::unordered_map<std::string, int> left_index_;
  std::unordered_map<std::string, int> right_index_;
};

struct AlsConfig {
  int factors = 32;
  double regularization = 0.1;
  double alpha = 40.0;  // confidence = 1 + alpha * positive count
  int iterations = 15;
  std::uint64_t seed = 0;

  void validate() const;
};

// Factorization of one direction. `objective` holds the regularized weighted
// squared error after initialization and after every sweep.
struct AlsFactors {
  Eigen::MatrixXd users;  // rows x factors
  Eigen::MatrixXd items;  // cols x factors
  std::vector<double> objective;

  Eigen::MatrixXd scores() const { return users * items.transpose(); }
};

// Implicit-feedback weighted ALS on a matrix of positive counts (zero
// entries are negatives or unobserved: preference 0, confidence 1).
AlsFactors fit_implicit_als(const Eigen::MatrixXd& positive_counts,
                            const AlsConfig& config);

struct PreferenceEstimate {
  Eigen::MatrixXd p1;  // n x m, left -> right
  Eigen::MatrixXd p2;  // m x n, right -> left
  AlsFactors left_to_right;
  AlsFactors right_to_left;
};

// Throws InsufficientInteractions naming the direction ("lr" or "rl") that
// has no positive signal.
PreferenceEstimate fit_preferences(const InteractionLog& log,
                                   const AlsConfig& config);

// (x - min) / (max - min); a constant matrix maps to 0.5 everywhere.
Eigen::MatrixXd normalize_scores(const Eigen::MatrixXd& raw);

}  // namespace reciprocal
