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

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "reciprocal/instance.hpp"

namespace reciprocal {

// Row/column sum tolerance for doubly stochastic matrices.
inline constexpr double kStochasticTolerance = 1e-9;
// Entries below -kNegativeEntryTolerance are reported as negative.
inline constexpr double kNegativeEntryTolerance = 1e-12;

// One probabilistic ranking per agent. left[i] is A_i (m x m): entry (j, k)
// is the probability that right agent j sits at rank k of left agent i's
// list. right[j] is B_j (n x n), analogously.
struct Policy {
  std::vector<Eigen::MatrixXd> left;
  std::vector<Eigen::MatrixXd> right;
};

// Every agent sees every opposite-side agent at every rank with equal
// probability.
Policy uniform_policy(int n, int m);

// (1 - weight) * a + weight * b, applied to every matrix on both sides.
Policy mix_policies(const Policy& a, const Policy& b, double weight);

struct Violation {
  std::string matrix;  // e.g. "A[3]" or "B[0]"
  std::string axis;    // "shape", "count", "row", "column" or "entry"
  int index = -1;      // row/column index; flat entry index for "entry"
  double observed = 0.0;

  std::string describe() const;
};

// Empty result means the policy is a valid list of doubly stochastic matrices
// with the instance's dimensions.
std::vector<Violation> validate_policy(const Instance& inst, const Policy& pol);

// Throws std::invalid_argument carrying the first few violations.
void require_valid_policy(const Instance& inst, const Policy& pol);

// Expected examination weight each agent receives in each opposite-side list.
//   left(i, j)  = sum_k v(k) A_i(j, k)   (how exposed j is to i)
//   right(j, i) = sum_l v(l) B_j(i, l)   (how exposed i is to j)
struct Exposure {
  Eigen::MatrixXd left;   // n x m
  Eigen::MatrixXd right;  // m x n
};

Exposure compute_exposure(const Instance& inst, const Policy& pol);

// Permutation matrix with entry (item, rank) = 1 for rank = position of item.
// order[r] is the item at rank r.
Eigen::MatrixXd permutation_matrix_from_order(const std::vector<int>& order);

}  // namespace reciprocal
