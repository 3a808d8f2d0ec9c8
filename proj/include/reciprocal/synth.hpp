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
#include <optional>

#include "reciprocal/instance.hpp"

namespace reciprocal {

// Synthetic market mixing a global popularity ladder with idiosyncratic
// taste:
//   p1(i, j) = lambda * j / (m - 1) + (1 - lambda) * U
//   p2(j, i) = lambda * i / (n - 1) + (1 - lambda) * U
// with 0-based indices and U iid uniform on [0, 1).
struct SynthSpec {
  int n = 20;
  int m = 20;
  double lambda = 0.0;
  ExaminationFunction exam;
  std::uint64_t seed = 0;

  void validate() const;
};

// Uniform draws come from std::mt19937_64(seed) as (x >> 11) * 2^-53,
// consumed row-major through p1 and then row-major through p2.
Instance synth_instance(const SynthSpec& spec);

// Portable uniform double in [0, 1) from one 64-bit draw.
inline double unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace reciprocal
