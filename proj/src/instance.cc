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

#include "reciprocal/instance.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace reciprocal {
namespace {

void check_probabilities(const Eigen::MatrixXd& x, const char* name) {
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      const double value = x(r, c);
      if (!(value >= 0.0 && value <= 1.0)) {
        throw std::invalid_argument(std::string(name) + "(" +
                                    std::to_string(r) + "," +
                                    std::to_string(c) + ") = " +
                                    std::to_string(value) +
                                    " is outside [0, 1]");
      }
    }
  }
}

}  // namespace

Instance::Instance(Eigen::MatrixXd p1, Eigen::MatrixXd p2,
                   ExaminationFunction exam)
    : p1_(std::move(p1)), p2_(std::move(p2)), exam_(exam) {
  if (p1_.rows() < 1 || p1_.cols() < 1) {
    throw std::invalid_argument("instance needs n >= 1 and m >= 1");
  }
  if (p2_.rows() != p1_.cols() || p2_.cols() != p1_.rows()) {
    throw std::invalid_argument(
        "p2 must be m x n (" + std::to_string(p1_.cols()) + " x " +
        std::to_string(p1_.rows()) + "), got " + std::to_string(p2_.rows()) +
        " x " + std::to_string(p2_.cols()));
  }
  if (exam_.cutoff && *exam_.cutoff < 1) {
    throw std::invalid_argument("examination cutoff K must be positive");
  }
  check_probabilities(p1_, "p1");
  check_probabilities(p2_, "p2");
  joint_ = p1_.cwiseProduct(p2_.transpose());
  left_weights_ = examination_weights(exam_, m());
  right_weights_ = examination_weights(exam_, n());
}

}  // namespace reciprocal
