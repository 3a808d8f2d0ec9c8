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

#include "reciprocal/policy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace reciprocal {
namespace {

void check_matrix(const Eigen::MatrixXd& x, int expected_dim,
                  const std::string& name, std::vector<Violation>& out) {
  if (x.rows() != expected_dim || x.cols() != expected_dim) {
    out.push_back({name, "shape", static_cast<int>(x.rows()),
                   static_cast<double>(x.cols())});
    return;
  }
  for (int r = 0; r < expected_dim; ++r) {
    const double sum = x.row(r).sum();
    if (!(std::abs(sum - 1.0) <= kStochasticTolerance)) {
      out.push_back({name, "row", r, sum});
    }
  }
  for (int c = 0; c < expected_dim; ++c) {
    const double sum = x.col(c).sum();
    if (!(std::abs(sum - 1.0) <= kStochasticTolerance)) {
      out.push_back({name, "column", c, sum});
    }
  }
  for (int r = 0; r < expected_dim; ++r) {
    for (int c = 0; c < expected_dim; ++c) {
      if (!(x(r, c) >= -kNegativeEntryTolerance)) {
        out.push_back({name, "entry", r * expected_dim + c, x(r, c)});
      }
    }
  }
}

}  // namespace

Policy uniform_policy(int n, int m) {
  if (n < 1 || m < 1) {
    throw std::invalid_argument("uniform_policy needs n >= 1 and m >= 1");
  }
  Policy pol;
  pol.left.assign(n, Eigen::MatrixXd::Constant(m, m, 1.0 / m));
  pol.right.assign(m, Eigen::MatrixXd::Constant(n, n, 1.0 / n));
  return pol;
}

Policy mix_policies(const Policy& a, const Policy& b, double weight) {
  if (a.left.size() != b.left.size() || a.right.size() != b.right.size()) {
    throw std::invalid_argument("mix_policies: policies differ in shape");
  }
  Policy out;
  out.left.reserve(a.left.size());
  out.right.reserve(a.right.size());
  for (std::size_t i = 0; i < a.left.size(); ++i) {
    out.left.push_back((1.0 - weight) * a.left[i] + weight * b.left[i]);
  }
  for (std::size_t j = 0; j < a.right.size(); ++j) {
    out.right.push_back((1.0 - weight) * a.right[j] + weight * b.right[j]);
  }
  return out;
}

std::string Violation::describe() const {
  std::ostringstream os;
  os << matrix << ": ";
  if (axis == "shape") {
    os << "shape " << index << " x " << observed << " does not match instance";
  } else if (axis == "count") {
    os << "expected " << index << " matrices, found " << observed;
  } else if (axis == "entry") {
    os << "entry #" << index << " = " << observed << " is negative";
  } else {
    os << axis << " " << index << " sums to " << observed;
  }
  return os.str();
}

std::vector<Violation> validate_policy(const Instance& inst,
                                       const Policy& pol) {
  std::vector<Violation> out;
  if (static_cast<int>(pol.left.size()) != inst.n()) {
    out.push_back({"A", "count", inst.n(),
                   static_cast<double>(pol.left.size())});
  }
  if (static_cast<int>(pol.right.size()) != inst.m()) {
    out.push_back({"B", "count", inst.m(),
                   static_cast<double>(pol.right.size())});
  }
  if (!out.empty()) return out;
  for (int i = 0; i < inst.n(); ++i) {
    check_matrix(pol.left[i], inst.m(), "A[" + std::to_string(i) + "]", out);
  }
  for (int j = 0; j < inst.m(); ++j) {
    check_matrix(pol.right[j], inst.n(), "B[" + std::to_string(j) + "]", out);
  }
  return out;
}

void require_valid_policy(const Instance& inst, const Policy& pol) {
  const auto violations = validate_policy(inst, pol);
  if (violations.empty()) return;
  std::ostringstream os;
  os << "invalid policy (" << violations.size() << " violations)";
  for (std::size_t k = 0; k < violations.size() && k < 5; ++k) {
    os << "; " << violations[k].describe();
  }
  throw std::invalid_argument(os.str());
}

Exposure compute_exposure(const Instance& inst, const Policy& pol) {
  const int n = inst.n();
  const int m = inst.m();
  Exposure e{Eigen::MatrixXd(n, m), Eigen::MatrixXd(m, n)};
  const Eigen::VectorXd& v_left = inst.left_list_weights();
  const Eigen::VectorXd& v_right = inst.right_list_weights();
  for (int i = 0; i < n; ++i) e.left.row(i) = (pol.left[i] * v_left).transpose();
  for (int j = 0; j < m; ++j) {
    e.right.row(j) = (pol.right[j] * v_right).transpose();
  }
  return e;
}

Eigen::MatrixXd permutation_matrix_from_order(const std::vector<int>& order) {
  const int d = static_cast<int>(order.size());
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(d, d);
  for (int rank = 0; rank < d; ++rank) x(order[rank], rank) = 1.0;
  return x;
}

}  // namespace reciprocal
