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

#ifndef OCEVAL_TRANSPORT_SOLVER_H_
#define OCEVAL_TRANSPORT_SOLVER_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "oceval/matching_cost.h"

namespace oceval {

// Integral transportation plan over a CostMatrix. `objective` is the sum of
// cost * flow over every cell, dummy-to-dummy included, using the
// unperturbed costs.
class TransportPlan {
 public:
  TransportPlan(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), flows_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t& at(std::size_t i, std::size_t j) {
    return flows_[i * cols_ + j];
  }
  std::int64_t at(std::size_t i, std::size_t j) const {
    return flows_[i * cols_ + j];
  }

  // Number of unit flows between a real detection and a real ground truth.
  std::size_t MatchedPairs() const;

  double objective = 0.0;

  friend bool operator==(const TransportPlan&, const TransportPlan&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::int64_t> flows_;
};

// Exact solver for the balanced transportation problem. Every supplier and
// demander is split into unit nodes and the resulting square assignment
// problem is solved with shortest augmenting paths, so the returned plan is an
// integral optimum.
//
// Among optimal plans the one with the most real-to-real flows is returned.
// This is done by lowering real-to-real costs by a tiny epsilon for plan
// selection only; the epsilon is small enough that the total perturbation
// stays below 1e-10.
//
// Throws ConfigError for mismatched sizes, negative capacities or an
// unbalanced problem, and InputError for NaN, infinite or negative costs.
TransportPlan Solve(const CostMatrix& cost, const SupplyDemand& capacities);

// Enumerates every partial injective matching between real detections and
// real ground truths; unmatched ones go to the dummy and the dummy-to-dummy
// cell absorbs the rest. Requires the dummy capacity structure produced by
// BuildProblem and at most kBruteForceLimit on each side. Ties go to the plan
// with more matched pairs.
inline constexpr std::size_t kBruteForceLimit = 6;
TransportPlan BruteForceSolve(const CostMatrix& cost,
                              const SupplyDemand& capacities);

}  // namespace oceval

#endif  // OCEVAL_TRANSPORT_SOLVER_H_
