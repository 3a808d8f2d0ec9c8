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
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "reciprocal/instance.hpp"
#include "reciprocal/policy.hpp"

namespace reciprocal {

// SW: both sides ascend the expected number of matches.
// Nash: left lists (A) ascend the right side's log Nash welfare and right
// lists (B) ascend the left side's log Nash welfare.
enum class Objective { kSocialWelfare, kNash };

enum class StepRule {
  kOpenLoop,  // eta_t = 2 / (t + 2), t = 1, 2, ...
  kConstant,  // eta_t = SolverConfig::constant_step
};

enum class Initialization {
  kUniform,
  kRandom,  // half uniform, half a seeded random permutation per agent
};

// Which block of the policy a gradient or oracle call refers to.
enum class Block { kA, kB };

struct SolverConfig {
  Objective objective = Objective::kSocialWelfare;
  int max_iterations = 100;
  StepRule step = StepRule::kOpenLoop;
  double constant_step = 1.0;
  // Stop once max(gap_A / max(1, |F_2|), gap_B / max(1, |F_1|)) <= tolerance.
  double tolerance = 1e-6;
  // Denominator floor for the Nash gradients.
  double utility_floor = 1e-12;
  // Linearize-and-step repetitions per block per round.
  int inner_steps = 1;
  Initialization init = Initialization::kUniform;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
  double step_size(int t) const;
};

std::string_view objective_name(Objective objective);
Objective parse_objective(std::string_view token);

struct IterationRecord {
  int iteration = 0;
  double objective = 0.0;  // SW, or log NSW_1 + log NSW_2
  double social_welfare = 0.0;
  double gap_a = 0.0;
  double gap_b = 0.0;
  double eta = 0.0;
};

struct SolveTrace {
  std::vector<IterationRecord> records;
  int iterations = 0;
  bool converged = false;
};

// Header "iteration,objective,gap_A,gap_B,eta" plus one row per record.
std::string trace_to_csv(const SolveTrace& trace);

// Gradient of the block's objective (F_2 for A, F_1 for B), one matrix per
// agent shaped like that agent's list matrix.
std::vector<Eigen::MatrixXd> gradient(const Instance& inst, const Policy& pol,
                                      Objective objective, Block block,
                                      double utility_floor = 1e-12);

// Rank-one factors of the gradient: agent a's matrix is
// item_weights.row(a)^T * v. Rows are agents of the block.
Eigen::MatrixXd gradient_item_weights(const Instance& inst, const Exposure& e,
                                      Objective objective, Block block,
                                      double utility_floor);

struct SolverState {
  Policy policy;
  int iteration = 0;  // rounds completed
};

struct RoundResult {
  IterationRecord record;
  bool converged = false;
};

// One alternating round: a Frank-Wolfe step on A, then one on B using the
// updated A.
RoundResult fw_round(const Instance& inst, SolverState& state,
                     const SolverConfig& config);

struct SolveResult {
  Policy policy;
  SolveTrace trace;
};

SolveResult solve(const Instance& inst, const SolverConfig& config);

// Starting point per config.init.
Policy initial_policy(const Instance& inst, const SolverConfig& config);

}  // namespace reciprocal
