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

#include "reciprocal/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "reciprocal/assignment.hpp"

namespace reciprocal {
namespace {

// Ranks 0..size-1, each either empty (-1) or holding an agent.
struct PartialList {
  explicit PartialList(int size) : agent_at(size, -1) {}

  RankingList complete() const {
    const int size = static_cast<int>(agent_at.size());
    std::vector<char> placed(size, 0);
    for (int a : agent_at) {
      if (a >= 0) placed[a] = 1;
    }
    RankingList list{agent_at};
    int next = 0;
    for (int& slot : list.order) {
      if (slot >= 0) continue;
      while (placed[next]) ++next;
      slot = next;
      placed[next] = 1;
    }
    return list;
  }

  std::vector<int> agent_at;
};

// Highest-scoring partner not yet forbidden for `agent`, or -1.
template <typename Score, typename Forbidden>
int best_remaining(int count, Score score, Forbidden forbidden) {
  int best = -1;
  for (int other = 0; other < count; ++other) {
    if (forbidden(other)) continue;
    if (best < 0 || score(other) > score(best)) best = other;
  }
  return best;
}

}  // namespace

Eigen::MatrixXd RankingList::to_matrix() const {
  return permutation_matrix_from_order(order);
}

RankingList rank_by_score(const Eigen::VectorXd& scores) {
  RankingList list;
  list.order.resize(scores.size());
  std::iota(list.order.begin(), list.order.end(), 0);
  std::stable_sort(list.order.begin(), list.order.end(),
                   [&](int a, int b) { return scores(a) > scores(b); });
  return list;
}

Policy naive_policy(const Instance& inst) {
  Policy pol;
  for (int i = 0; i < inst.n(); ++i) {
    pol.left.push_back(rank_by_score(inst.p1().row(i).transpose()).to_matrix());
  }
  for (int j = 0; j < inst.m(); ++j) {
    pol.right.push_back(
        rank_by_score(inst.p2().row(j).transpose()).to_matrix());
  }
  return pol;
}

Policy prod_policy(const Instance& inst) {
  Policy pol;
  for (int i = 0; i < inst.n(); ++i) {
    pol.left.push_back(
        rank_by_score(inst.joint().row(i).transpose()).to_matrix());
  }
  for (int j = 0; j < inst.m(); ++j) {
    pol.right.push_back(rank_by_score(inst.joint().col(j)).to_matrix());
  }
  return pol;
}

int default_iter_lp_depth(const Instance& inst) {
  return std::min(inst.n(), inst.m());
}

Policy iter_lp_policy(const Instance& inst, int depth) {
  if (depth < 1) throw std::invalid_argument("IterLP depth must be >= 1");
  const int n = inst.n();
  const int m = inst.m();
  const Eigen::MatrixXd& p = inst.joint();
  std::vector<PartialList> left(n, PartialList(m));
  std::vector<PartialList> right(m, PartialList(n));
  PairSet forbidden;

  for (int rank = 0; rank < depth && (rank < m || rank < n); ++rank) {
    const PartialMatching matching = max_weight_matching(p, forbidden);
    std::vector<char> left_done(n, 0), right_done(m, 0);
    for (const auto& [i, j] : matching.pairs) {
      if (rank < m) left[i].agent_at[rank] = j;
      if (rank < n) right[j].agent_at[rank] = i;
      left_done[i] = right_done[j] = 1;
    }
    for (const auto& pair : matching.pairs) forbidden.insert(pair);

    if (rank < m) {
      for (int i = 0; i < n; ++i) {
        if (left_done[i]) continue;
        const int j = best_remaining(
            m, [&](int b) { return p(i, b); },
            [&](int b) { return forbidden.contains({i, b}); });
        if (j < 0) continue;
        left[i].agent_at[rank] = j;
        forbidden.insert({i, j});
      }
    }
    if (rank < n) {
      for (int j = 0; j < m; ++j) {
        if (right_done[j]) continue;
        const int i = best_remaining(
            n, [&](int a) { return p(a, j); },
            [&](int a) { return forbidden.contains({a, j}); });
        if (i < 0) continue;
        right[j].agent_at[rank] = i;
        forbidden.insert({i, j});
      }
    }
  }

  Policy pol;
  for (const auto& list : left) pol.left.push_back(list.complete().to_matrix());
  for (const auto& list : right) {
    pol.right.push_back(list.complete().to_matrix());
  }
  return pol;
}

}  // namespace reciprocal
