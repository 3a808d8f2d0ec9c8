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

#include "reciprocal/frank_wolfe.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "reciprocal/assignment.hpp"
#include "reciprocal/welfare.hpp"

namespace reciprocal {
namespace {

double block_objective(const Instance& inst, const Exposure& e,
                       Objective objective, Block block) {
  if (objective == Objective::kSocialWelfare) return social_welfare(inst, e);
  // A serves the right side's welfare, B the left side's.
  return log_nsw(inst, e, block == Block::kA ? Side::kRight : Side::kLeft);
}

double round_objective(const Instance& inst, const Exposure& e,
                       Objective objective) {
  if (objective == Objective::kSocialWelfare) return social_welfare(inst, e);
  return log_nsw(inst, e, Side::kLeft) + log_nsw(inst, e, Side::kRight);
}

constexpr double kFlatGap = 1e-12;

// One Frank-Wolfe step on a block; returns the FW gap at the linearization
// point.
double step_block(const Instance& inst, Policy& pol, const SolverConfig& config,
                  Block block, double eta) {
  const Exposure e = compute_exposure(inst, pol);
  const Eigen::MatrixXd w =
      gradient_item_weights(inst, e, config.objective, block,
                            config.utility_floor);
  const bool is_a = block == Block::kA;
  const Eigen::VectorXd& v =
      is_a ? inst.left_list_weights() : inst.right_list_weights();
  const Eigen::MatrixXd& exposure = is_a ? e.left : e.right;
  std::vector<Eigen::MatrixXd>& lists = is_a ? pol.left : pol.right;

  double gap = 0.0;
  for (Eigen::Index a = 0; a < w.rows(); ++a) {
    const Eigen::VectorXd item_weights = w.row(a).transpose();
    const PermutationMatrix vertex =
        max_weight_permutation_rank_one(item_weights, v);
    double agent_gap = 0.0;
    double scale = 1.0;
    for (Eigen::Index item = 0; item < w.cols(); ++item) {
      agent_gap += item_weights(item) * (v(vertex[item]) - exposure(a, item));
      scale += std::abs(item_weights(item)) * v(vertex[item]);
    }
    gap += agent_gap;
    // No ascent direction beyond rounding: the current lists are already
    // optimal for this linearization, and stepping toward a tied vertex
    // would only wander.
    if (agent_gap <= kFlatGap * scale) continue;
    Eigen::MatrixXd& x = lists[a];
    x *= (1.0 - eta);
    for (Eigen::Index item = 0; item < w.cols(); ++item) {
      x(item, vertex[item]) += eta;
    }
  }
  return gap;
}

}  // namespace

void SolverConfig::validate() const {
  if (max_iterations < 1) {
    throw std::invalid_argument("max_iterations must be >= 1");
  }
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  if (!(utility_floor > 0.0)) {
    throw std::invalid_argument("utility_floor must be > 0");
  }
  if (inner_steps < 1) throw std::invalid_argument("inner_steps must be >= 1");
  if (step == StepRule::kConstant &&
      !(constant_step > 0.0 && constant_step <= 1.0)) {
    throw std::invalid_argument("constant_step must lie in (0, 1]");
  }
}

double SolverConfig::step_size(int t) const {
  if (step == StepRule::kConstant) return constant_step;
  return 2.0 / (static_cast<double>(t) + 2.0);
}

std::string_view objective_name(Objective objective) {
  return objective == Objective::kSocialWelfare ? "sw" : "nsw";
}

Objective parse_objective(std::string_view token) {
  if (token == "sw") return Objective::kSocialWelfare;
  if (token == "nsw") return Objective::kNash;
  throw std::invalid_argument("unknown objective '" + std::string(token) +
                              "' (expected sw|nsw)");
}

std::string trace_to_csv(const SolveTrace& trace) {
  std::ostringstream os;
  os.precision(17);
  os << "iteration,objective,gap_A,gap_B,eta\n";
  for (const auto& r : trace.records) {
    os << r.iteration << ',' << r.objective << ',' << r.gap_a << ','
       << r.gap_b << ',' << r.eta << '\n';
  }
  return os.str();
}

Eigen::MatrixXd gradient_item_weights(const Instance& inst, const Exposure& e,
                                      Objective objective, Block block,
                                      double utility_floor) {
  const int n = inst.n();
  const int m = inst.m();
  const Eigen::MatrixXd& p = inst.joint();
  if (block == Block::kA) {
    // d/dA_i(j, k) = p(i, j) eB(j, i) v(k) [/ max(V_j, floor)]
    Eigen::MatrixXd w = p.cwiseProduct(e.right.transpose());
    if (objective == Objective::kNash) {
      const Eigen::VectorXd v_util = side_utilities(inst, e, Side::kRight);
      for (int j = 0; j < m; ++j) {
        w.col(j) /= std::max(v_util(j), utility_floor);
      }
    }
    return w;
  }
  // d/dB_j(i, l) = p(i, j) eA(i, j) v(l) [/ max(U_i, floor)]
  Eigen::MatrixXd w = p.cwiseProduct(e.left);
  if (objective == Objective::kNash) {
    const Eigen::VectorXd u_util = side_utilities(inst, e, Side::kLeft);
    for (int i = 0; i < n; ++i) w.row(i) /= std::max(u_util(i), utility_floor);
  }
  return w.transpose();
}

std::vector<Eigen::MatrixXd> gradient(const Instance& inst, const Policy& pol,
                                      Objective objective, Block block,
                                      double utility_floor) {
  require_valid_policy(inst, pol);
  const Exposure e = compute_exposure(inst, pol);
  const Eigen::MatrixXd w =
      gradient_item_weights(inst, e, objective, block, utility_floor);
  const Eigen::VectorXd& v = block == Block::kA ? inst.left_list_weights()
                                                : inst.right_list_weights();
  std::vector<Eigen::MatrixXd> out;
  out.reserve(w.rows());
  for (Eigen::Index a = 0; a < w.rows(); ++a) {
    out.push_back(w.row(a).transpose() * v.transpose());
  }
  return out;
}

RoundResult fw_round(const Instance& inst, SolverState& state,
                     const SolverConfig& config) {
  const int t = state.iteration + 1;
  const double eta = config.step_size(t);

  const double f2 = block_objective(inst, compute_exposure(inst, state.policy),
                                    config.objective, Block::kA);
  double gap_a = 0.0;
  for (int s = 0; s < config.inner_steps; ++s) {
    const double g = step_block(inst, state.policy, config, Block::kA, eta);
    if (s == 0) gap_a = g;
  }
  const double f1 = block_objective(inst, compute_exposure(inst, state.policy),
                                    config.objective, Block::kB);
  double gap_b = 0.0;
  for (int s = 0; s < config.inner_steps; ++s) {
    const double g = step_block(inst, state.policy, config, Block::kB, eta);
    if (s == 0) gap_b = g;
  }
  state.iteration = t;

  const Exposure e = compute_exposure(inst, state.policy);
  RoundResult result;
  result.record.iteration = t;
  result.record.objective = round_objective(inst, e, config.objective);
  result.record.social_welfare = social_welfare(inst, e);
  result.record.gap_a = gap_a;
  result.record.gap_b = gap_b;
  result.record.eta = eta;
  const double rel_a = gap_a / std::max(1.0, std::abs(f2));
  const double rel_b = gap_b / std::max(1.0, std::abs(f1));
  result.converged = std::max(rel_a, rel_b) <= config.tolerance;
  return result;
}

Policy initial_policy(const Instance& inst, const SolverConfig& config) {
  Policy pol = uniform_policy(inst.n(), inst.m());
  if (config.init == Initialization::kUniform) return pol;
  std::mt19937_64 rng(config.seed);
  auto perturb = [&](Eigen::MatrixXd& x) {
    std::vector<int> order(x.rows());
    for (std::size_t k = 0; k < order.size(); ++k) {
      order[k] = static_cast<int>(k);
    }
    // Fisher-Yates with an explicit draw so the result is library-agnostic.
    for (std::size_t k = order.size(); k > 1; --k) {
      std::swap(order[k - 1], order[rng() % k]);
    }
    x = 0.5 * x + 0.5 * permutation_matrix_from_order(order);
  };
  for (auto& x : pol.left) perturb(x);
  for (auto& x : pol.right) perturb(x);
  return pol;
}

SolveResult solve(const Instance& inst, const SolverConfig& config) {
  config.validate();
  SolverState state{initial_policy(inst, config), 0};
  SolveTrace trace;
  for (int t = 0; t < config.max_iterations; ++t) {
    const RoundResult round = fw_round(inst, state, config);
    trace.records.push_back(round.record);
    if (round.converged) {
      trace.converged = true;
      break;
    }
  }
  trace.iterations = state.iteration;
  require_valid_policy(inst, state.policy);
  return {std::move(state.policy), std::move(trace)};
}

}  // namespace reciprocal
