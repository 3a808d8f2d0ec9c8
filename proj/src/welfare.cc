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

#include "reciprocal/welfare.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace reciprocal {
namespace {

void check_index(int index, int size, const char* what) {
  if (index < 0 || index >= size) {
    throw std::out_of_range(std::string(what) + " index " +
                            std::to_string(index) + " outside [0, " +
                            std::to_string(size) + ")");
  }
}

// The summation order here is shared with cross_utility so that an agent's
// utility under its own opportunity is bitwise identical to utility().
double left_utility(const Instance& inst, const Exposure& e, int i) {
  double total = 0.0;
  for (int j = 0; j < inst.m(); ++j) {
    total += (inst.joint(i, j) * e.left(i, j)) * e.right(j, i);
  }
  return total;
}

double right_utility(const Instance& inst, const Exposure& e, int j) {
  double total = 0.0;
  for (int i = 0; i < inst.n(); ++i) {
    total += (inst.joint(i, j) * e.right(j, i)) * e.left(i, j);
  }
  return total;
}

}  // namespace

const char* side_name(Side side) {
  return side == Side::kLeft ? "left" : "right";
}

double match_probability(const Instance& inst, const Policy& pol, int i,
                         int j) {
  check_index(i, inst.n(), "left");
  check_index(j, inst.m(), "right");
  const double exposure_left = pol.left[i].row(j).dot(inst.left_list_weights());
  const double exposure_right =
      pol.right[j].row(i).dot(inst.right_list_weights());
  return (inst.joint(i, j) * exposure_left) * exposure_right;
}

double utility(const Instance& inst, const Policy& pol, Side side, int agent) {
  check_index(agent, side == Side::kLeft ? inst.n() : inst.m(),
              side_name(side));
  const Exposure e = compute_exposure(inst, pol);
  return side == Side::kLeft ? left_utility(inst, e, agent)
                             : right_utility(inst, e, agent);
}

Eigen::VectorXd side_utilities(const Instance& inst, const Exposure& e,
                               Side side) {
  if (side == Side::kLeft) {
    Eigen::VectorXd u(inst.n());
    for (int i = 0; i < inst.n(); ++i) u(i) = left_utility(inst, e, i);
    return u;
  }
  Eigen::VectorXd u(inst.m());
  for (int j = 0; j < inst.m(); ++j) u(j) = right_utility(inst, e, j);
  return u;
}

double social_welfare(const Instance& inst, const Exposure& e) {
  return side_utilities(inst, e, Side::kLeft).sum();
}

double social_welfare(const Instance& inst, const Policy& pol) {
  return social_welfare(inst, compute_exposure(inst, pol));
}

std::vector<bool> nsw_participants(const Instance& inst, Side side) {
  const Eigen::MatrixXd& p = inst.joint();
  if (side == Side::kLeft) {
    std::vector<bool> mask(inst.n());
    for (int i = 0; i < inst.n(); ++i) mask[i] = p.row(i).maxCoeff() > 0.0;
    return mask;
  }
  std::vector<bool> mask(inst.m());
  for (int j = 0; j < inst.m(); ++j) mask[j] = p.col(j).maxCoeff() > 0.0;
  return mask;
}

double log_nsw(const Instance& inst, const Exposure& e, Side side) {
  const Eigen::VectorXd u = side_utilities(inst, e, side);
  const std::vector<bool> mask = nsw_participants(inst, side);
  double total = 0.0;
  for (Eigen::Index a = 0; a < u.size(); ++a) {
    if (!mask[a]) continue;
    if (u(a) <= 0.0) return -std::numeric_limits<double>::infinity();
    total += std::log(u(a));
  }
  return total;
}

double log_nsw(const Instance& inst, const Policy& pol, Side side) {
  return log_nsw(inst, compute_exposure(inst, pol), side);
}

}  // namespace reciprocal
