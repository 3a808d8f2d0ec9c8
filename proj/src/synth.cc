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

#include "reciprocal/synth.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace reciprocal {

void SynthSpec::validate() const {
  if (n < 2 || m < 2) {
    throw std::invalid_argument("synthetic markets need n >= 2 and m >= 2");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("lambda must lie in [0, 1]");
  }
}

Instance synth_instance(const SynthSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  auto mix = [&](double popularity) {
    const double value =
        spec.lambda * popularity + (1.0 - spec.lambda) * unit_interval(rng());
    return std::clamp(value, 0.0, 1.0);
  };
  Eigen::MatrixXd p1(spec.n, spec.m);
  for (int i = 0; i < spec.n; ++i) {
    for (int j = 0; j < spec.m; ++j) {
      p1(i, j) = mix(static_cast<double>(j) / (spec.m - 1));
    }
  }
  Eigen::MatrixXd p2(spec.m, spec.n);
  for (int j = 0; j < spec.m; ++j) {
    for (int i = 0; i < spec.n; ++i) {
      p2(j, i) = mix(static_cast<double>(i) / (spec.n - 1));
    }
  }
  return Instance(std::move(p1), std::move(p2), spec.exam);
}

}  // namespace reciprocal
