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

#include <optional>

#include <Eigen/Dense>

#include "reciprocal/instance.hpp"
#include "reciprocal/policy.hpp"
#include "reciprocal/welfare.hpp"

namespace reciprocal {

inline constexpr double kDefaultEnvyTolerance = 1e-9;

// How an agent is shown to the other side: for left agent i, column j holds
// row i of B_j (an n-vector over B_j's ranks); for right agent j, column i
// holds row j of A_i. A read-only projection of a policy.
class OpportunityView {
 public:
  OpportunityView(const Policy& pol, Side side, int agent);

  Side side() const { return side_; }
  int agent() const { return agent_; }
  // Number of opposite-side lists the agent appears in.
  int lists() const;
  // Rank distribution of the agent inside list `list`.
  Eigen::VectorXd row(int list) const;
  // All rows stacked as columns (C_i is n x m, D_j is m x n).
  Eigen::MatrixXd matrix() const;

 private:
  const Policy* pol_;
  Side side_;
  int agent_;
};

// Utility `evaluator` would get if it kept its own lists but were shown to
// the other side the way `target` is. cross_utility(s, x, x) == utility(s, x).
double cross_utility(const Instance& inst, const Policy& pol, Side side,
                     int evaluator, int target);

// Entry (x, y) = cross_utility(x, y) - utility(x), with zero diagonal.
Eigen::MatrixXd envy_matrix(const Instance& inst, const Exposure& e, Side side);

struct EnvyReport {
  long left_envy_pairs = 0;
  long right_envy_pairs = 0;
  double max_left_envy = 0.0;   // largest positive gap, 0 if none
  double max_right_envy = 0.0;
  double tolerance = kDefaultEnvyTolerance;
};

// Ordered pair (x, y), x != y, is envy iff cross - own > tolerance.
EnvyReport envy_audit(const Instance& inst, const Policy& pol,
                      double tolerance = kDefaultEnvyTolerance);
EnvyReport envy_audit(const Instance& inst, const Exposure& e,
                      double tolerance = kDefaultEnvyTolerance);

// Smallest epsilon for which every agent has `neighbors` + 1 same-side agents
// (itself included) whose joint-preference rows are within epsilon in the
// sup norm. A side with fewer than neighbors + 1 agents cannot satisfy the
// condition and is reported as not applicable.
struct SimilarityReport {
  double epsilon = 0.0;              // max over applicable sides
  std::optional<double> left;        // per-side bound
  std::optional<double> right;
  int neighbors = 1;
  bool includes_self = true;         // the agent counts toward its own set
};

// Throws std::invalid_argument if neighbors < 1 or neither side has
// neighbors + 1 agents.
SimilarityReport epsilon_similarity(const Instance& inst, int neighbors);

}  // namespace reciprocal
