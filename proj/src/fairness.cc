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

#include "reciprocal/fairness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace reciprocal {
namespace {

void check_index(int index, int size, const char* what) {
  if (index < 0 || index >= size) {
    throw std::out_of_range(std::string(what) + " index " +
                            std::to_string(index) + " outside [0, " +
                            std::to_string(size) + ")");
  }
}

// Same association order as the utilities in welfare.cc.
double left_cross(const Instance& inst, const Exposure& e, int i, int target) {
  double total = 0.0;
  for (int j = 0; j < inst.m(); ++j) {
    total += (inst.joint(i, j) * e.left(i, j)) * e.right(j, target);
  }
  return total;
}

double right_cross(const Instance& inst, const Exposure& e, int j,
                   int target) {
  double total = 0.0;
  for (int i = 0; i < inst.n(); ++i) {
    total += (inst.joint(i, j) * e.right(j, i)) * e.left(i, target);
  }
  return total;
}

// k-th smallest distance from each row of `rows` to the other rows, sup norm.
double kth_neighbor_bound(const Eigen::MatrixXd& rows, int k) {
  const Eigen::Index count = rows.rows();
  double worst = 0.0;
  std::vector<double> dist;
  for (Eigen::Index a = 0; a < count; ++a) {
    dist.clear();
    for (Eigen::Index b = 0; b < count; ++b) {
      if (b == a) continue;
      dist.push_back((rows.row(a) - rows.row(b)).cwiseAbs().maxCoeff());
    }
    std::nth_element(dist.begin(), dist.begin() + (k - 1), dist.end());
    worst = std::max(worst, dist[k - 1]);
  }
  return worst;
}

int own_side_size(const Policy& pol, Side side) {
  if (side == Side::kLeft) {
    return pol.right.empty() ? 0 : static_cast<int>(pol.right.front().rows());
  }
  return pol.left.empty() ? 0 : static_cast<int>(pol.left.front().rows());
}

}  // namespace

OpportunityView::OpportunityView(const Policy& pol, Side side, int agent)
    : pol_(&pol), side_(side), agent_(agent) {
  check_index(agent, own_side_size(pol, side), side_name(side));
}

int OpportunityView::lists() const {
  return static_cast<int>(side_ == Side::kLeft ? pol_->right.size()
                                               : pol_->left.size());
}

Eigen::VectorXd OpportunityView::row(int list) const {
  check_index(list, lists(), "list");
  const Eigen::MatrixXd& x =
      side_ == Side::kLeft ? pol_->right[list] : pol_->left[list];
  return x.row(agent_).transpose();
}

Eigen::MatrixXd OpportunityView::matrix() const {
  const int count = lists();
  const Eigen::MatrixXd& first =
      side_ == Side::kLeft ? pol_->right.front() : pol_->left.front();
  Eigen::MatrixXd out(first.cols(), count);
  for (int l = 0; l < count; ++l) out.col(l) = row(l);
  return out;
}

double cross_utility(const Instance& inst, const Policy& pol, Side side,
                     int evaluator, int target) {
  const int size = side == Side::kLeft ? inst.n() : inst.m();
  check_index(evaluator, size, side_name(side));
  check_index(target, size, side_name(side));
  const Exposure e = compute_exposure(inst, pol);
  return side == Side::kLeft ? left_cross(inst, e, evaluator, target)
                             : right_cross(inst, e, evaluator, target);
}

Eigen::MatrixXd envy_matrix(const Instance& inst, const Exposure& e,
                            Side side) {
  const int size = side == Side::kLeft ? inst.n() : inst.m();
  Eigen::MatrixXd gap = Eigen::MatrixXd::Zero(size, size);
  for (int x = 0; x < size; ++x) {
    const double own = side == Side::kLeft ? left_cross(inst, e, x, x)
                                           : right_cross(inst, e, x, x);
    for (int y = 0; y < size; ++y) {
      if (y == x) continue;
      const double other = side == Side::kLeft ? left_cross(inst, e, x, y)
                                               : right_cross(inst, e, x, y);
      gap(x, y) = other - own;
    }
  }
  return gap;
}

EnvyReport envy_audit(const Instance& inst, const Exposure& e,
                      double tolerance) {
  if (!(tolerance >= 0.0)) {
    throw std::invalid_argument("envy tolerance must be >= 0");
  }
  EnvyReport report;
  report.tolerance = tolerance;
  auto scan = [&](Side side, long& pairs, double& max_gap) {
    const Eigen::MatrixXd gap = envy_matrix(inst, e, side);
    for (Eigen::Index x = 0; x < gap.rows(); ++x) {
      for (Eigen::Index y = 0; y < gap.cols(); ++y) {
        if (x == y) continue;
        if (gap(x, y) > tolerance) ++pairs;
        max_gap = std::max(max_gap, gap(x, y));
      }
    }
  };
  scan(Side::kLeft, report.left_envy_pairs, report.max_left_envy);
  scan(Side::kRight, report.right_envy_pairs, report.max_right_envy);
  return report;
}

EnvyReport envy_audit(const Instance& inst, const Policy& pol,
                      double tolerance) {
  return envy_audit(inst, compute_exposure(inst, pol), tolerance);
}

SimilarityReport epsilon_similarity(const Instance& inst, int neighbors) {
  if (neighbors < 1) {
    throw std::invalid_argument("epsilon_similarity needs K >= 1");
  }
  if (neighbors + 1 > std::max(inst.n(), inst.m())) {
    throw std::invalid_argument(
        "epsilon_similarity: K + 1 = " + std::to_string(neighbors + 1) +
        " exceeds both side sizes (n = " + std::to_string(inst.n()) +
        ", m = " + std::to_string(inst.m()) + ")");
  }
  SimilarityReport report;
  report.neighbors = neighbors;
  if (neighbors + 1 <= inst.n()) {
    report.left = kth_neighbor_bound(inst.joint(), neighbors);
  }
  if (neighbors + 1 <= inst.m()) {
    report.right = kth_neighbor_bound(inst.joint().transpose(), neighbors);
  }
  report.epsilon = std::max(report.left.value_or(0.0),
                            report.right.value_or(0.0));
  return report;
}

}  // namespace reciprocal
