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

#include <Eigen/Dense>

#include "reciprocal/examination.hpp"

namespace reciprocal {

// A two-sided market: n left agents, m right agents, the directed preference
// probabilities p1 (left -> right, n x m) and p2 (right -> left, m x n), and
// the examination model shared by both sides.
//
// Immutable after construction; the joint preference p(i, j) = p1(i, j) *
// p2(j, i) is derived once in the constructor.
class Instance {
 public:
  // Throws std::invalid_argument on empty sides, mismatched shapes, or
  // entries outside [0, 1] (NaN included).
  Instance(Eigen::MatrixXd p1, Eigen::MatrixXd p2, ExaminationFunction exam);

  int n() const { return static_cast<int>(p1_.rows()); }
  int m() const { return static_cast<int>(p1_.cols()); }

  const Eigen::MatrixXd& p1() const { return p1_; }
  const Eigen::MatrixXd& p2() const { return p2_; }
  // n x m joint preference.
  const Eigen::MatrixXd& joint() const { return joint_; }
  double joint(int i, int j) const { return joint_(i, j); }

  const ExaminationFunction& exam() const { return exam_; }
  // v(1..m): weights of the positions in a left agent's list.
  const Eigen::VectorXd& left_list_weights() const { return left_weights_; }
  // v(1..n): weights of the positions in a right agent's list.
  const Eigen::VectorXd& right_list_weights() const { return right_weights_; }

 private:
  Eigen::MatrixXd p1_;
  Eigen::MatrixXd p2_;
  Eigen::MatrixXd joint_;
  ExaminationFunction exam_;
  Eigen::VectorXd left_weights_;
  Eigen::VectorXd right_weights_;
};

}  // namespace reciprocal
