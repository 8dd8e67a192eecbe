// Copyright 2026 The oceval Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oceval/transport_solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "oceval/errors.h"
#include "oceval/numeric.h"

namespace oceval {

namespace {

// Upper bound on the total shift the tie-breaking perturbation may introduce
// into any plan's objective.
constexpr double kMaxTotalPerturbation = 1e-10;
constexpr double kMaxCellPerturbation = 1e-7;
constexpr double kBruteForceTieTolerance = 1e-12;

bool IsRealPair(const CostMatrix& cost, std::size_t i, std::size_t j) {
  return !cost.IsDummyRow(i) && !cost.IsDummyCol(j);
}

void ValidateProblem(const CostMatrix& cost, const SupplyDemand& sd) {
  if (sd.supplies.size() != cost.rows() || sd.demands.size() != cost.cols()) {
    std::ostringstream msg;
    msg << "capacity vectors (" << sd.supplies.size() << ", "
        << sd.demands.size() << ") do not match cost matrix " << cost.rows()
        << "x" << cost.cols();
    throw ConfigError(msg.str());
  }
  std::int64_t total_supply = 0;
  std::int64_t total_demand = 0;
  for (std::int64_t s : sd.supplies) {
    if (s < 0) throw ConfigError("negative supply");
    total_supply += s;
  }
  for (std::int64_t d : sd.demands) {
    if (d < 0) throw ConfigError("negative demand");
    total_demand += d;
  }
  if (total_supply != total_demand) {
    std::ostringstream msg;
    msg << "unbalanced transportation problem: total supply " << total_supply
        << " != total demand " << total_demand;
    throw ConfigError(msg.str());
  }
  for (std::size_t i = 0; i < cost.rows(); ++i) {
    for (std::size_t j = 0; j < cost.cols(); ++j) {
      const double c = cost.at(i, j);
      if (!std::isfinite(c) || c < 0.0) {
        std::ostringstream msg;
        msg << "cost at (" << i << ", " << j << ") is " << c
            << "; costs must be finite and nonnegative";
        throw InputError(msg.str());
      }
    }
  }
}

double PlanObjective(const CostMatrix& cost, const TransportPlan& plan) {
  CompensatedSum total;
  for (std::size_t i = 0; i < plan.rows(); ++i) {
    for (std::size_t j = 0; j < plan.cols(); ++j) {
      if (plan.at(i, j) != 0) {
        total.Add(cost.at(i, j) * static_cast<double>(plan.at(i, j)));
      }
    }
  }
  return total.Value();
}

// Minimum-cost perfect assignment on a dense size x size matrix using
// shortest augmenting paths with potentials. Returns, for each row, the
// assigned column.
std::vector<std::size_t> SolveAssignment(const std::vector<double>& a,
                                         std::size_t size) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based internally; index 0 is the virtual root column.
  std::vector<double> u(size + 1, 0.0);
  std::vector<double> v(size + 1, 0.0);
  std::vector<std::size_t> row_of_col(size + 1, 0);
  std::vector<std::size_t> way(size + 1, 0);
  std::vector<double> min_slack(size + 1);
  std::vector<char> used(size + 1);

  for (std::size_t row = 1; row <= size; ++row) {
    row_of_col[0] = row;
    std::size_t col0 = 0;
    std::fill(min_slack.begin(), min_slack.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[col0] = 1;
      const std::size_t row0 = row_of_col[col0];
      double delta = kInf;
      std::size_t col1 = 0;
      for (std::size_t col = 1; col <= size; ++col) {
        if (used[col]) continue;
        const double reduced =
            a[(row0 - 1) * size + (col - 1)] - u[row0] - v[col];
        if (reduced < min_slack[col]) {
          min_slack[col] = reduced;
          way[col] = col0;
        }
        if (min_slack[col] < delta) {
          delta = min_slack[col];
          col1 = col;
        }
      }
      for (std::size_t col = 0; col <= size; ++col) {
        if (used[col]) {
          u[row_of_col[col]] += delta;
          v[col] -= delta;
        } else {
          min_slack[col] -= delta;
        }
      }
      col0 = col1;
    } while (row_of_col[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      row_of_col[col0] = row_of_col[col1];
      col0 = col1;
    } while (col0 != 0);
  }

  std::vector<std::size_t> col_of_row(size, 0);
  for (std::size_t col = 1; col <= size; ++col) {
    col_of_row[row_of_col[col] - 1] = col - 1;
  }
  return col_of_row;
}

}  // namespace

std::size_t TransportPlan::MatchedPairs() const {
  std::size_t k = 0;
  for (std::size_t i = 0; i + 1 < rows_; ++i) {
    for (std::size_t j = 0; j + 1 < cols_; ++j) {
      k += static_cast<std::size_t>(at(i, j));
    }
  }
  return k;
}

TransportPlan Solve(const CostMatrix& cost, const SupplyDemand& capacities) {
  ValidateProblem(cost, capacities);

  // Expand every node into unit copies.
  std::vector<std::size_t> row_owner;
  std::vector<std::size_t> col_owner;
  for (std::size_t i = 0; i < cost.rows(); ++i) {
    row_owner.insert(row_owner.end(),
                     static_cast<std::size_t>(capacities.supplies[i]), i);
  }
  for (std::size_t j = 0; j < cost.cols(); ++j) {
    col_owner.insert(col_owner.end(),
                     static_cast<std::size_t>(capacities.demands[j]), j);
  }
  const std::size_t size = row_owner.size();

  TransportPlan plan(cost.rows(), cost.cols());
  if (size == 0) return plan;

  const std::size_t max_pairs = std::max<std::size_t>(
      1, std::min(cost.num_detections(), cost.num_ground_truths()));
  const double epsilon = std::min(
      kMaxCellPerturbation,
      kMaxTotalPerturbation / static_cast<double>(max_pairs));

  std::vector<double> expanded(size * size);
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t c = 0; c < size; ++c) {
      const std::size_t i = row_owner[r];
      const std::size_t j = col_owner[c];
      expanded[r * size + c] =
          cost.at(i, j) - (IsRealPair(cost, i, j) ? epsilon : 0.0);
    }
  }

  const std::vector<std::size_t> assignment = SolveAssignment(expanded, size);
  for (std::size_t r = 0; r < size; ++r) {
    ++plan.at(row_owner[r], col_owner[assignment[r]]);
  }
  plan.objective = PlanObjective(cost, plan);
  return plan;
}

TransportPlan BruteForceSolve(const CostMatrix& cost,
                              const SupplyDemand& capacities) {
  ValidateProblem(cost, capacities);
  const std::size_t m = cost.num_detections();
  const std::size_t n = cost.num_ground_truths();
  if (m > kBruteForceLimit || n > kBruteForceLimit) {
    std::ostringstream msg;
    msg << "brute-force solver refuses " << m << "x" << n
        << " instance (limit " << kBruteForceLimit << " per side)";
    throw ConfigError(msg.str());
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (capacities.supplies[i] != 1) {
      throw ConfigError("brute-force solver needs unit real supplies");
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (capacities.demands[j] != 1) {
      throw ConfigError("brute-force solver needs unit real demands");
    }
  }
  if (capacities.supplies[m] != static_cast<std::int64_t>(n) ||
      capacities.demands[n] != static_cast<std::int64_t>(m)) {
    throw ConfigError("brute-force solver needs dummy capacities n and m");
  }

  // gt_of_det[i] == n marks an unmatched detection.
  std::vector<std::size_t> current(m, n);
  std::vector<std::size_t> best(m, n);
  std::vector<char> gt_used(n, 0);
  double best_objective = std::numeric_limits<double>::infinity();
  std::size_t best_k = 0;

  auto evaluate = [&]() {
    double objective = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < m; ++i) {
      objective += cost.at(i, current[i]);
      if (current[i] != n) ++k;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!gt_used[j]) objective += cost.at(m, j);
    }
    objective += static_cast<double>(k) * cost.at(m, n);
    const bool better = objective < best_objective - kBruteForceTieTolerance;
    const bool tie_more_pairs =
        std::abs(objective - best_objective) <= kBruteForceTieTolerance &&
        k > best_k;
    if (better || tie_more_pairs) {
      best_objective = objective;
      best_k = k;
      best = current;
    }
  };

  auto recurse = [&](auto&& self, std::size_t i) -> void {
    if (i == m) {
      evaluate();
      return;
    }
    current[i] = n;
    self(self, i + 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (gt_used[j]) continue;
      gt_used[j] = 1;
      current[i] = j;
      self(self, i + 1);
      gt_used[j] = 0;
    }
    current[i] = n;
  };
  recurse(recurse, 0);

  TransportPlan plan(m + 1, n + 1);
  std::vector<char> matched_gt(n, 0);
  for (std::size_t i = 0; i < m; ++i) {
    plan.at(i, best[i]) = 1;
    if (best[i] != n) matched_gt[best[i]] = 1;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!matched_gt[j]) plan.at(m, j) = 1;
  }
  plan.at(m, n) = static_cast<std::int64_t>(best_k);
  plan.objective = PlanObjective(cost, plan);
  return plan;
}

}  // namespace oceval
