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

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace reciprocal {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Optimal assignment plus the reduced costs certifying it. reduced(r, c) >= 0
// everywhere (up to rounding) and every optimal assignment uses only entries
// with reduced cost ~0.
struct SolvedAssignment {
  std::vector<int> column_of_row;
  Eigen::MatrixXd reduced;
};

// Shortest augmenting path Hungarian method, O(d^3), maximizing. Entries must
// be finite.
SolvedAssignment solve_assignment(const Eigen::MatrixXd& weights) {
  const int d = static_cast<int>(weights.rows());
  // 1-based potentials and column matches; index 0 is the virtual root.
  std::vector<double> u(d + 1, 0.0), v(d + 1, 0.0), min_slack(d + 1);
  std::vector<int> row_of_col(d + 1, 0), way(d + 1, 0);
  std::vector<char> used(d + 1);
  auto cost = [&](int r, int c) { return -weights(r - 1, c - 1); };

  for (int r = 1; r <= d; ++r) {
    row_of_col[0] = r;
    int col = 0;
    std::fill(min_slack.begin(), min_slack.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[col] = 1;
      const int row = row_of_col[col];
      double delta = kInf;
      int next = 0;
      for (int c = 1; c <= d; ++c) {
        if (used[c]) continue;
        const double slack = cost(row, c) - u[row] - v[c];
        if (slack < min_slack[c]) {
          min_slack[c] = slack;
          way[c] = col;
        }
        if (min_slack[c] < delta) {
          delta = min_slack[c];
          next = c;
        }
      }
      for (int c = 0; c <= d; ++c) {
        if (used[c]) {
          u[row_of_col[c]] += delta;
          v[c] -= delta;
        } else {
          min_slack[c] -= delta;
        }
      }
      col = next;
    } while (row_of_col[col] != 0);
    do {
      const int prev = way[col];
      row_of_col[col] = row_of_col[prev];
      col = prev;
    } while (col != 0);
  }

  SolvedAssignment out;
  out.column_of_row.assign(d, -1);
  for (int c = 1; c <= d; ++c) out.column_of_row[row_of_col[c] - 1] = c - 1;
  out.reduced.resize(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      out.reduced(r, c) = cost(r + 1, c + 1) - u[r + 1] - v[c + 1];
    }
  }
  return out;
}

// Rewrites `column_of_row` into the lexicographically smallest perfect
// matching of the graph {(r, c) : tight(r, c)}. The input must be a perfect
// matching of that graph.
template <typename Tight>
void lexicographic_minimum(std::vector<int>& column_of_row, Tight tight) {
  const int d = static_cast<int>(column_of_row.size());
  std::vector<int> row_of_col(d);
  for (int r = 0; r < d; ++r) row_of_col[column_of_row[r]] = r;
  std::vector<char> locked_col(d, 0);
  std::vector<int> parent_col(d);
  std::vector<char> seen(d);

  // Alternating path from row `start` to column `goal` through unlocked
  // tight edges avoiding column `banned`; on success re-matches along it.
  auto reroute = [&](int start, int goal, int banned) {
    std::fill(seen.begin(), seen.end(), 0);
    std::deque<int> rows{start};
    std::vector<int> entry_col(d, -1);  // column through which a row was hit
    while (!rows.empty()) {
      const int row = rows.front();
      rows.pop_front();
      for (int c = 0; c < d; ++c) {
        if (seen[c] || locked_col[c] || c == banned || !tight(row, c)) continue;
        seen[c] = 1;
        parent_col[c] = row;
        if (c == goal) {
          // Walk back: parent_col[c] takes c, its old column goes upstream.
          int col = c;
          while (true) {
            const int r = parent_col[col];
            const int previous = entry_col[r];
            column_of_row[r] = col;
            row_of_col[col] = r;
            if (previous < 0) break;
            col = previous;
          }
          return true;
        }
        const int next = row_of_col[c];
        entry_col[next] = c;
        rows.push_back(next);
      }
    }
    return false;
  };

  for (int r = 0; r < d; ++r) {
    const int current = column_of_row[r];
    for (int c = 0; c < current; ++c) {
      if (locked_col[c] || !tight(r, c)) continue;
      const int displaced = row_of_col[c];
      // Temporarily pin (r, c): `displaced` must reach r's old column.
      locked_col[c] = 1;
      const bool ok = reroute(displaced, current, c);
      locked_col[c] = 0;
      if (ok) {
        column_of_row[r] = c;
        row_of_col[c] = r;
        break;
      }
    }
    locked_col[column_of_row[r]] = 1;
  }
}

void check_square(const Eigen::MatrixXd& w) {
  if (w.rows() != w.cols()) {
    throw std::invalid_argument("max_weight_permutation: matrix is " +
                                std::to_string(w.rows()) + " x " +
                                std::to_string(w.cols()) + ", not square");
  }
}

}  // namespace

PermutationMatrix::PermutationMatrix(std::vector<int> column_of_row)
    : column_of_row_(std::move(column_of_row)) {
  std::vector<char> hit(column_of_row_.size(), 0);
  for (int c : column_of_row_) {
    if (c < 0 || c >= dimension() || hit[c]) {
      throw std::invalid_argument("PermutationMatrix: not a bijection");
    }
    hit[c] = 1;
  }
}

Eigen::MatrixXd PermutationMatrix::materialize() const {
  const int d = dimension();
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(d, d);
  for (int r = 0; r < d; ++r) x(r, column_of_row_[r]) = 1.0;
  return x;
}

double PermutationMatrix::value(const Eigen::MatrixXd& weights) const {
  double total = 0.0;
  for (int r = 0; r < dimension(); ++r) total += weights(r, column_of_row_[r]);
  return total;
}

PermutationMatrix max_weight_permutation(const Eigen::MatrixXd& weights) {
  check_square(weights);
  const int d = static_cast<int>(weights.rows());
  if (d == 0) return PermutationMatrix();

  // Shift finite entries into [0, range]; -inf becomes a sentinel so costly
  // that using one more of them loses against any finite rearrangement.
  double lo = kInf, hi = -kInf;
  for (Eigen::Index r = 0; r < weights.rows(); ++r) {
    for (Eigen::Index c = 0; c < weights.cols(); ++c) {
      const double x = weights(r, c);
      if (std::isnan(x) || x == kInf) {
        throw std::invalid_argument(
            "max_weight_permutation: entries must be finite or -inf");
      }
      if (x == -kInf) continue;
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  if (lo == kInf) lo = hi = 0.0;
  const double range = hi - lo;
  const double sentinel = -(d * (range + 1.0) + 1.0);
  Eigen::MatrixXd shifted(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      const double x = weights(r, c);
      shifted(r, c) = x == -kInf ? sentinel : x - lo;
    }
  }

  SolvedAssignment solved = solve_assignment(shifted);
  const double tol = 1e-9 * (1.0 + range);
  lexicographic_minimum(solved.column_of_row, [&](int r, int c) {
    return solved.reduced(r, c) <= tol;
  });
  return PermutationMatrix(std::move(solved.column_of_row));
}

PermutationMatrix max_weight_permutation_rank_one(
    const Eigen::VectorXd& item_weights, const Eigen::VectorXd& rank_weights) {
  const int d = static_cast<int>(item_weights.size());
  if (rank_weights.size() != d) {
    throw std::invalid_argument("rank-one oracle: size mismatch");
  }
  for (int k = 1; k < d; ++k) {
    if (rank_weights(k) > rank_weights(k - 1)) {
      throw std::invalid_argument(
          "rank-one oracle: rank weights must be non-increasing");
    }
  }
  if (!item_weights.allFinite() || !rank_weights.allFinite()) {
    throw std::invalid_argument("rank-one oracle: weights must be finite");
  }

  // Items sorted by weight descending; the t-th of them would take rank t.
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return item_weights(a) > item_weights(b);
  });

  // Rank classes: maximal runs of equal rank weight.
  std::vector<int> class_of_rank(d), class_start;
  for (int k = 0; k < d; ++k) {
    if (k == 0 || rank_weights(k) != rank_weights(k - 1)) {
      class_start.push_back(k);
    }
    class_of_rank[k] = static_cast<int>(class_start.size()) - 1;
  }

  // Item groups: maximal runs of equal item weight in sorted order. A group
  // owns a fixed number of ranks from each class; which ranks inside a class
  // is free, and that freedom is the whole set of optimal assignments.
  std::vector<int> group_of_item(d);
  std::vector<std::vector<std::pair<int, int>>> demand;  // (class, count)
  for (int t = 0; t < d; ++t) {
    if (t == 0 || item_weights(order[t]) != item_weights(order[t - 1])) {
      demand.emplace_back();
    }
    auto& g = demand.back();
    const int cls = class_of_rank[t];
    if (g.empty() || g.back().first != cls) {
      g.emplace_back(cls, 0);
    }
    ++g.back().second;
    group_of_item[order[t]] = static_cast<int>(demand.size()) - 1;
  }

  // Greedy in item index order: each item takes the smallest free rank that
  // keeps its group's demand satisfiable.
  std::vector<int> next_free(class_start);
  std::vector<int> column_of_row(d);
  for (int item = 0; item < d; ++item) {
    for (auto& [cls, count] : demand[group_of_item[item]]) {
      if (count == 0) continue;
      --count;
      column_of_row[item] = next_free[cls]++;
      break;
    }
  }
  return PermutationMatrix(std::move(column_of_row));
}

PartialMatching max_weight_matching(const Eigen::MatrixXd& weights,
                                    const PairSet& forbidden) {
  const int n = static_cast<int>(weights.rows());
  const int m = static_cast<int>(weights.cols());
  if (!weights.allFinite()) {
    throw std::invalid_argument("max_weight_matching: weights must be finite");
  }
  PartialMatching result;
  if (n == 0 || m == 0) return result;

  // Square (n + m) problem: left rows, then one dummy row per right vertex;
  // right columns, then one dummy column per left vertex. Any partial
  // matching extends to a perfect one through zero-weight dummy edges.
  const int d = n + m;
  auto allowed = [&](int r, int c) {
    return !forbidden.contains({r, c});
  };
  auto is_real = [&](int r, int c) { return r < n && c < m; };

  double range = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) range = std::max(range, std::abs(weights(i, j)));
  }
  const double sentinel = -(d * (2.0 * range + 1.0) + 1.0);
  Eigen::MatrixXd stage1 = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      stage1(i, j) = allowed(i, j) ? weights(i, j) : sentinel;
    }
  }
  SolvedAssignment first = solve_assignment(stage1);
  const double tol = 1e-9 * (1.0 + range);

  // Among maximum weight matchings, maximize the number of real pairs.
  Eigen::MatrixXd stage2(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      if (first.reduced(r, c) > tol) {
        stage2(r, c) = -(d + 1.0);
      } else {
        stage2(r, c) = is_real(r, c) && allowed(r, c) ? 1.0 : 0.0;
      }
    }
  }
  SolvedAssignment second = solve_assignment(stage2);
  lexicographic_minimum(second.column_of_row, [&](int r, int c) {
    return second.reduced(r, c) <= 0.5;
  });

  for (int i = 0; i < n; ++i) {
    const int j = second.column_of_row[i];
    if (j < m) {
      result.pairs.emplace_back(i, j);
      result.weight += weights(i, j);
    }
  }
  return result;
}

}  // namespace reciprocal
