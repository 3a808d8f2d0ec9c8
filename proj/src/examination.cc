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

#include "reciprocal/examination.hpp"

#include <cmath>
#include <stdexcept>

namespace reciprocal {

double examination_value(const ExaminationFunction& exam, int k) {
  if (k < 1) {
    throw std::invalid_argument("examination rank must be >= 1, got " +
                                std::to_string(k));
  }
  if (exam.cutoff && k > *exam.cutoff) return 0.0;
  switch (exam.kind) {
    case ExamKind::kInverse:
      return 1.0 / static_cast<double>(k);
    case ExamKind::kLogarithmic:
      return 1.0 / std::log2(static_cast<double>(k) + 1.0);
  }
  return 0.0;
}

Eigen::VectorXd examination_weights(const ExaminationFunction& exam, int d) {
  Eigen::VectorXd v(d);
  for (int k = 1; k <= d; ++k) v(k - 1) = examination_value(exam, k);
  return v;
}

std::string_view exam_kind_name(ExamKind kind) {
  return kind == ExamKind::kInverse ? "inv" : "log";
}

ExamKind parse_exam_kind(std::string_view token) {
  if (token == "inv" || token == "inverse") return ExamKind::kInverse;
  if (token == "log" || token == "logarithmic") return ExamKind::kLogarithmic;
  throw std::invalid_argument("unknown examination kind '" +
                              std::string(token) + "' (expected inv|log)");
}

}  // namespace reciprocal
