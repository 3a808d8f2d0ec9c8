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

#include <set>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace reciprocal {

// A vertex of the Birkhoff polytope: row r is assigned to column
// column_of_row[r].
class PermutationMatrix {
 public:
  PermutationMatrix() = default;
  explicit PermutationMatrix(std::vector<int> column_of_row);

  int dimension() const { return static_cast<int>(column_of_row_.size()); }
  const std::vector<int>& assignment() const { return column_of_row_; }
  int operator[](int row) const { return column_of_row_[row]; }

  Eigen::MatrixXd materialize() const;
  // sum_r weights(r, column_of_row[r])
  double value(const Eigen::MatrixXd& weights) const;

  bool operator==(const PermutationMatrix&) const = default;

 private:
  std::vector<int> column_of_row_;
};

// Maximizes sum_r W(r, sigma(r)) over permutations. Entries may be -inf,
// meaning "only if unavoidable"; every other entry must be finite. Among
// maximizers the lexicographically smallest (sigma(0), sigma(1), ...) wins.
// Throws std::invalid_argument on non-square or NaN/+inf input.
PermutationMatrix max_weight_permutation(const Eigen::MatrixXd& weights);

// Same problem for W(j, k) = item_weights(j) * rank_weights(k) with
// rank_weights non-increasing, solved by sorting. Ties are resolved exactly
// as max_weight_permutation resolves them, comparing weights exactly.
PermutationMatrix max_weight_permutation_rank_one(
    const Eigen::VectorXd& item_weights, const Eigen::VectorXd& rank_weights);

using PairSet = std::set<std::pair<int, int>>;

struct PartialMatching {
  std::vector<std::pair<int, int>> pairs;  // (left, right), sorted by left
  double weight = 0.0;
};

// Maximum weight matching of the bipartite graph with weights W (n x m),
// excluding `forbidden` pairs. Vertices may stay unmatched. Among maximum
// weight matchings the larger cardinality wins, then the lexicographically
// smallest vector of left partners (unmatched ranks after every right index).
PartialMatching max_weight_matching(const Eigen::MatrixXd& weights,
                                    const PairSet& forbidden = {});

}  // namespace reciprocal
