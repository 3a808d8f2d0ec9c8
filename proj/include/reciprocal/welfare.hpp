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

#include "reciprocal/instance.hpp"
#include "reciprocal/policy.hpp"

namespace reciprocal {

enum class Side { kLeft, kRight };

const char* side_name(Side side);

// Pr[a_i matches b_j] = p(i, j) * exposure.left(i, j) * exposure.right(j, i).
// Indices are 0-based; throws std::out_of_range on bad indices.
double match_probability(const Instance& inst, const Policy& pol, int i, int j);

// Expected number of matches of one agent: U_i on the left, V_j on the right.
double utility(const Instance& inst, const Policy& pol, Side side, int agent);

// All utilities of one side, from precomputed exposures.
Eigen::VectorXd side_utilities(const Instance& inst, const Exposure& e,
                               Side side);

// Expected total number of matches.
double social_welfare(const Instance& inst, const Policy& pol);
double social_welfare(const Instance& inst, const Exposure& e);

// Sum of log utilities over the side's agents. Agents whose joint preference
// row (column, for the right side) is identically zero are skipped: their
// utility is 0 under every policy. Returns -inf if any other agent has zero
// utility.
double log_nsw(const Instance& inst, const Policy& pol, Side side);
double log_nsw(const Instance& inst, const Exposure& e, Side side);

// Mask of agents that take part in the side's Nash product.
std::vector<bool> nsw_participants(const Instance& inst, Side side);

}  // namespace reciprocal
