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

#include "reciprocal/assignment.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles/brute_force.hpp"

namespace reciprocal {
namespace {

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
  Eigen::MatrixXd w(2, 2);
  w << a, b, c, d;
  return w;
}

TEST(PermutationTest, SmallExamples) {
  PermutationMatrix p = max_weight_permutation(mat2(2, 1, 1, 2));
  EXPECT_EQ(p.assignment(), (std::vector<int>{0, 1}));
  EXPECT_EQ(p.value(mat2(2, 1, 1, 2)), 4.0);
  p = max_weight_permutation(mat2(0, 0, 0, 0));
  EXPECT_EQ(p.assignment(), (std::vector<int>{0, 1}));
  p = max_weight_permutation(mat2(1, 3, 2, 5));
  EXPECT_EQ(p.assignment(), (std::vector<int>{0, 1}));
  EXPECT_EQ(p.value(mat2(1, 3, 2, 5)), 6.0);
}

TEST(PermutationTest, NonSquareRejected) {
  EXPECT_THROW(max_weight_permutation(Eigen::MatrixXd::Zero(2, 3)),
               std::invalid_argument);
}

TEST(PermutationTest, BijectionChecked) {
  EXPECT_THROW(PermutationMatrix({0, 0}), std::invalid_argument);
  EXPECT_THROW(PermutationMatrix({0, 2}), std::invalid_argument);
  const PermutationMatrix p({2, 0, 1});
  const Eigen::MatrixXd x = p.materialize();
  EXPECT_TRUE(x.rowwise().sum().isOnes());
  EXPECT_TRUE(x.colwise().sum().isOnes());
  EXPECT_EQ(x(0, 2), 1.0);
}

TEST(PermutationTest, SentinelAvoidedUnlessForced) {
  const double ninf = -std::numeric_limits<double>::infinity();
  Eigen::MatrixXd w(3, 3);
  w << 5, ninf, 1,
       ninf, ninf, ninf,
       2, 3, ninf;
  const PermutationMatrix p = max_weight_permutation(w);
  // Row 1 is all sentinel; the other rows still avoid it.
  EXPECT_TRUE(std::isfinite(w(0, p[0])));
  EXPECT_TRUE(std::isfinite(w(2, p[2])));
  EXPECT_EQ(p.assignment(), (std::vector<int>{0, 2, 1}));
}

TEST(PermutationPropertyTest, ExhaustiveFourByFour) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> small(0, 3);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    for (int d = 1; d <= 4; ++d) {
      Eigen::MatrixXd w(d, d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          w(r, c) = trial % 2 ? small(rng) : unif(rng);  // integers force ties
      const auto want = oracle::best_permutation(w);
      const PermutationMatrix got = max_weight_permutation(w);
      EXPECT_NEAR(got.value(w), want.value, 1e-12);
      if (trial % 2) EXPECT_EQ(got.assignment(), want.sigma);
      const Eigen::MatrixXd x = got.materialize();
      EXPECT_TRUE(x.rowwise().sum().isOnes());
      EXPECT_TRUE(x.colwise().sum().isOnes());
    }
  }
}

TEST(PermutationPropertyTest, RankOneMatchesGeneralOracle) {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<int> small(0, 2);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + trial % 5;
    Eigen::VectorXd item(d), rank(d);
    for (int k = 0; k < d; ++k) item(k) = trial % 3 ? unif(rng) : small(rng);
    const ExaminationFunction e{
        trial % 2 ? ExamKind::kLogarithmic : ExamKind::kInverse,
        trial % 4 == 0 ? std::optional<int>(2) : std::nullopt};
    rank = examination_weights(e, d);
    const Eigen::MatrixXd w = item * rank.transpose();
    const PermutationMatrix fast = max_weight_permutation_rank_one(item, rank);
    const auto want = oracle::best_permutation(w);
    EXPECT_NEAR(fast.value(w), want.value, 1e-12);
    EXPECT_EQ(fast.assignment(), want.sigma) << "trial " << trial;
    EXPECT_EQ(fast, max_weight_permutation(w)) << "trial " << trial;
  }
}

TEST(PermutationTest, RankOneNeedsSortedRankWeights) {
  Eigen::VectorXd item(2), rank(2);
  item << 1, 2;
  rank << 0.5, 1.0;
  EXPECT_THROW(max_weight_permutation_rank_one(item, rank),
               std::invalid_argument);
}

TEST(MatchingTest, Examples) {
  const Eigen::MatrixXd w = mat2(1.0, 0.5, 0.5, 1.0);
  PartialMatching mm = max_weight_matching(w);
  EXPECT_EQ(mm.pairs, (std::vector<std::pair<int, int>>{{0, 0}, {1, 1}}));
  EXPECT_DOUBLE_EQ(mm.weight, 2.0);
  mm = max_weight_matching(w, {{0, 0}, {1, 1}});
  EXPECT_EQ(mm.pairs, (std::vector<std::pair<int, int>>{{0, 1}, {1, 0}}));
  EXPECT_DOUBLE_EQ(mm.weight, 1.0);
  mm = max_weight_matching(Eigen::MatrixXd::Zero(2, 2));
  EXPECT_EQ(mm.pairs, (std::vector<std::pair<int, int>>{{0, 0}, {1, 1}}));
  EXPECT_EQ(mm.weight, 0.0);
}

TEST(MatchingTest, Rectangular) {
  Eigen::MatrixXd w(2, 3);
  w << 0.2, 0.9, 0.1,
       0.3, 0.8, 0.0;
  const PartialMatching mm = max_weight_matching(w);
  EXPECT_EQ(mm.pairs, (std::vector<std::pair<int, int>>{{0, 1}, {1, 0}}));
  EXPECT_DOUBLE_EQ(mm.weight, 1.2);
  const PartialMatching tall = max_weight_matching(w.transpose());
  EXPECT_DOUBLE_EQ(tall.weight, 1.2);
}

TEST(MatchingTest, FullyForbiddenRowLeftUnmatched) {
  const PartialMatching mm =
      max_weight_matching(mat2(1, 1, 1, 1), {{0, 0}, {0, 1}});
  ASSERT_EQ(mm.pairs.size(), 1u);
  EXPECT_EQ(mm.pairs[0], (std::pair<int, int>{1, 0}));
}

// Best matching by enumeration: weight, then cardinality, then the
// lexicographically smallest vector of left partners (-1 = unmatched
// sorts after every real column).
struct Best {
  double weight = -1;
  int size = -1;
  std::vector<int> key;
};

Best enumerate_best(const Eigen::MatrixXd& w, const PairSet& forbidden,
                    double tol) {
  Best best;
  oracle::enumerate_matchings(
      static_cast<int>(w.rows()), static_cast<int>(w.cols()),
      [&](const std::vector<int>& col) {
        double s = 0;
        int size = 0;
        std::vector<int> key(col.size());
        for (std::size_t r = 0; r < col.size(); ++r) {
          key[r] = col[r] < 0 ? static_cast<int>(w.cols()) : col[r];
          if (col[r] < 0) continue;
          if (forbidden.count({static_cast<int>(r), col[r]})) return;
          s += w(r, col[r]);
          ++size;
        }
        const bool better =
            s > best.weight + tol ||
            (s > best.weight - tol &&
             (size > best.size || (size == best.size && key < best.key)));
        if (better) best = {s, size, key};
      });
  return best;
}

TEST(MatchingPropertyTest, ExhaustiveSmallGraphs) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> small(0, 2);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 4, m = 1 + (trial / 4) % 4;
    Eigen::MatrixXd w(n, m);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < m; ++c) w(r, c) = trial % 3 ? unif(rng) : small(rng);
    PairSet forbidden;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < m; ++c)
        if (unif(rng) < 0.25) forbidden.insert({r, c});
    const PartialMatching got = max_weight_matching(w, forbidden);
    const Best want = enumerate_best(w, forbidden, 1e-12);
    EXPECT_NEAR(got.weight, want.weight, 1e-12) << "trial " << trial;
    double check = 0;
    std::vector<int> key(n, m);
    std::vector<bool> used(m, false);
    for (const auto& [r, c] : got.pairs) {
      EXPECT_EQ(forbidden.count({r, c}), 0u);
      EXPECT_FALSE(used[c]);
      used[c] = true;
      check += w(r, c);
      key[r] = c;
    }
    EXPECT_NEAR(check, got.weight, 1e-12);
    if (trial % 3 == 0) {
      EXPECT_EQ(static_cast<int>(got.pairs.size()), want.size) << "trial " << trial;
      EXPECT_EQ(key, want.key) << "trial " << trial;
    }
  }
}

}  // namespace
}  // namespace reciprocal
