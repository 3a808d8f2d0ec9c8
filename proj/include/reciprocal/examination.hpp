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

#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace reciprocal {

enum class ExamKind {
  kInverse,      // v(k) = 1 / k
  kLogarithmic,  // v(k) = 1 / log2(k + 1)
};

// Position-based examination probability v(k), optionally truncated so that
// v(k) = 0 for every k > cutoff.
struct ExaminationFunction {
  ExamKind kind = ExamKind::kInverse;
  std::optional<int> cutoff;

  bool operator==(const ExaminationFunction&) const = default;
};

// v(k) for a 1-based rank k >= 1. Ranks past the cutoff return 0.
double examination_value(const ExaminationFunction& exam, int k);

// (v(1), ..., v(d)) as a column vector.
Eigen::VectorXd examination_weights(const ExaminationFunction& exam, int d);

// "inv" / "log", the tokens used by the file formats and the CLI.
std::string_view exam_kind_name(ExamKind kind);
ExamKind parse_exam_kind(std::string_view token);

}  // namespace reciprocal
