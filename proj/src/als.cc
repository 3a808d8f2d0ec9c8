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

#include "reciprocal/als.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "reciprocal/synth.hpp"

namespace reciprocal {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double weighted_objective(const Eigen::MatrixXd& counts,
                          const AlsFactors& f, const AlsConfig& config) {
  const Eigen::MatrixXd pred = f.scores();
  double loss = 0.0;
  for (Eigen::Index r = 0; r < counts.rows(); ++r) {
    for (Eigen::Index c = 0; c < counts.cols(); ++c) {
      const double pref = counts(r, c) > 0.0 ? 1.0 : 0.0;
      const double conf = 1.0 + config.alpha * counts(r, c);
      const double err = pref - pred(r, c);
      loss += conf * err * err;
    }
  }
  return loss + config.regularization *
                    (f.users.squaredNorm() + f.items.squaredNorm());
}

// Solves every row of `target` against fixed `other` factors.
// counts is target-rows x other-rows.
void solve_side(const Eigen::MatrixXd& counts, const Eigen::MatrixXd& other,
                const AlsConfig& config, Eigen::MatrixXd& target) {
  const Eigen::Index k = other.cols();
  const Eigen::MatrixXd gram = other.transpose() * other;
  const Eigen::MatrixXd ridge =
      config.regularization * Eigen::MatrixXd::Identity(k, k);
  for (Eigen::Index r = 0; r < counts.rows(); ++r) {
    // Y^T C_r Y = Y^T Y + Y^T (C_r - I) Y; only positives have C > 1.
    Eigen::MatrixXd lhs = gram + ridge;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
    for (Eigen::Index c = 0; c < counts.cols(); ++c) {
      const double count = counts(r, c);
      if (count <= 0.0) continue;
      const double conf = 1.0 + config.alpha * count;
      const auto y = other.row(c).transpose();
      lhs.noalias() += (conf - 1.0) * y * y.transpose();
      rhs.noalias() += conf * y;
    }
    target.row(r) = lhs.ldlt().solve(rhs).transpose();
  }
}

Eigen::MatrixXd positive_counts(const InteractionLog& log, Direction dir) {
  const auto n = static_cast<Eigen::Index>(log.left_ids().size());
  const auto m = static_cast<Eigen::Index>(log.right_ids().size());
  Eigen::MatrixXd counts = dir == Direction::kLeftToRight
                               ? Eigen::MatrixXd::Zero(n, m)
                               : Eigen::MatrixXd::Zero(m, n);
  for (const auto& row : log.rows()) {
    if (row.direction != dir || row.signal != Signal::kPositive) continue;
    if (dir == Direction::kLeftToRight) {
      counts(row.left, row.right) += 1.0;
    } else {
      counts(row.right, row.left) += 1.0;
    }
  }
  return counts;
}

}  // namespace

int InteractionLog::intern(const std::string& id, std::vector<std::string>& ids,
                           std::unordered_map<std::string, int>& index) {
  const auto [it, inserted] =
      index.emplace(id, static_cast<int>(ids.size()));
  if (inserted) ids.push_back(id);
  return it->second;
}

void InteractionLog::add(const std::string& left_id,
                         const std::string& right_id, Direction direction,
                         Signal signal) {
  rows_.push_back({intern(left_id, left_ids_, left_index_),
                   intern(right_id, right_ids_, right_index_), direction,
                   signal});
}

int InteractionLog::positives(Direction direction) const {
  int count = 0;
  for (const auto& row : rows_) {
    if (row.direction == direction && row.signal == Signal::kPositive) ++count;
  }
  return count;
}

InteractionLog InteractionLog::from_csv(std::istream& in) {
  InteractionLog log;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    for (auto& f : fields) f = trim(f);
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("interactions line " +
                                  std::to_string(line_no) + ": " + why);
    };
    if (!header_seen) {
      if (fields != std::vector<std::string>{"left_id", "right_id",
                                             "direction", "signal"}) {
        fail("expected header left_id,right_id,direction,signal");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 4) fail("expected 4 fields");
    if (fields[0].empty() || fields[1].empty()) fail("empty id");
    Direction dir = Direction::kLeftToRight;
    if (fields[2] == "lr") {
      dir = Direction::kLeftToRight;
    } else if (fields[2] == "rl") {
      dir = Direction::kRightToLeft;
    } else {
      fail("direction must be lr or rl, got '" + fields[2] + "'");
    }
    Signal sig = Signal::kPositive;
    if (fields[3] == "pos") {
      sig = Signal::kPositive;
    } else if (fields[3] == "neg") {
      sig = Signal::kNegative;
    } else {
      fail("signal must be pos or neg, got '" + fields[3] + "'");
    }
    log.add(fields[0], fields[1], dir, sig);
  }
  if (!header_seen) throw std::invalid_argument("interactions: empty file");
  return log;
}

InteractionLog InteractionLog::read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return from_csv(in);
}

void AlsConfig::validate() const {
  if (factors < 1) throw std::invalid_argument("ALS factors must be >= 1");
  if (!(regularization > 0.0)) {
    throw std::invalid_argument("ALS regularization must be > 0");
  }
  if (!(alpha >= 0.0)) throw std::invalid_argument("ALS alpha must be >= 0");
  if (iterations < 1) throw std::invalid_argument("ALS iterations must be >= 1");
}

AlsFactors fit_implicit_als(const Eigen::MatrixXd& counts,
                            const AlsConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  auto init = [&](Eigen::Index rows) {
    Eigen::MatrixXd x(rows, config.factors);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (int c = 0; c < config.factors; ++c) {
        x(r, c) = 0.1 * (unit_interval(rng()) - 0.5);
      }
    }
    return x;
  };
  AlsFactors f;
  f.users = init(counts.rows());
  f.items = init(counts.cols());
  f.objective.push_back(weighted_objective(counts, f, config));
  const Eigen::MatrixXd counts_t = counts.transpose();
  for (int it = 0; it < config.iterations; ++it) {
    solve_side(counts, f.items, config, f.users);
    solve_side(counts_t, f.users, config, f.items);
    f.objective.push_back(weighted_objective(counts, f, config));
  }
  return f;
}

Eigen::MatrixXd normalize_scores(const Eigen::MatrixXd& raw) {
  if (raw.size() == 0) return raw;
  const double lo = raw.minCoeff();
  const double hi = raw.maxCoeff();
  if (!(hi > lo)) return Eigen::MatrixXd::Constant(raw.rows(), raw.cols(), 0.5);
  Eigen::MatrixXd out = (raw.array() - lo) / (hi - lo);
  return out.cwiseMax(0.0).cwiseMin(1.0);
}

PreferenceEstimate fit_preferences(const InteractionLog& log,
                                   const AlsConfig& config) {
  config.validate();
  if (log.positives(Direction::kLeftToRight) == 0) {
    throw InsufficientInteractions(
        "insufficient interactions: no positive signal in direction lr");
  }
  if (log.positives(Direction::kRightToLeft) == 0) {
    throw InsufficientInteractions(
        "insufficient interactions: no positive signal in direction rl");
  }
  PreferenceEstimate est;
  est.left_to_right =
      fit_implicit_als(positive_counts(log, Direction::kLeftToRight), config);
  AlsConfig rl = config;
  rl.seed = config.seed + 1;
  est.right_to_left =
      fit_implicit_als(positive_counts(log, Direction::kRightToLeft), rl);
  est.p1 = normalize_scores(est.left_to_right.scores());
  est.p2 = normalize_scores(est.right_to_left.scores());
  return est;
}

}  // namespace reciprocal
