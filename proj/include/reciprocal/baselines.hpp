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

#include <vector>

#include <Eigen/Dense>

#include "reciprocal/instance.hpp"
#include "reciprocal/policy.hpp"

namespace reciprocal {

// A deterministic list: order[r] is the opposite-side agent shown at rank r.
struct RankingList {
  std::vector<int> order;

  // Entry (agent, rank) = 1 when the agent is shown at that rank.
  Eigen::MatrixXd to_matrix() const;
};

// Opposite-side agents sorted by score descending, ties by ascending index.
RankingList rank_by_score(const Eigen::VectorXd& scores);

// Each side ranks by its own directed preference (p1 rows, p2 rows).
Policy naive_policy(const Instance& inst);

// Both sides rank by the joint preference p(i, j) = p1(i, j) p2(j, i).
Policy prod_policy(const Instance& inst);

// Fills ranks 1..depth from successive maximum weight matchings on the joint
// preference, forbidding every pair once it has been recommended. Agents
// left unmatched in a round take their best remaining partner instead; after
// `depth` rounds each list is completed in ascending index order.
Policy iter_lp_policy(const Instance& inst, int depth);

// min(n, m)
int default_iter_lp_depth(const Instance& inst);

}  // namespace reciprocal
