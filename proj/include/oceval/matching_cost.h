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

#ifndef OCEVAL_MATCHING_COST_H_
#define OCEVAL_MATCHING_COST_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "oceval/geometry.h"

namespace oceval {

using CategoryId = std::int64_t;
using ImageId = std::int64_t;

struct Detection {
  // Throws InputError unless 0 <= score <= 1.
  Detection(BoundingBox box, CategoryId label, double score);

  BoundingBox box;
  CategoryId label;
  double score;
};

struct GroundTruthInstance {
  BoundingBox box;
  CategoryId label;
};

// Weights of the correction cost. lambda balances localization against
// classification; beta is the unit cost of sending a detection or a ground
// truth to the dummy side, i.e. the largest cost a matched pair may carry.
struct OcCostParams {
  static constexpr double kDefaultLambda = 0.5;
  static constexpr double kDefaultBeta = 0.6;

  double lambda = kDefaultLambda;
  double beta = kDefaultBeta;

  // Throws ConfigError unless both values lie in [0, 1].
  void Validate() const;
};

// (1 - GIoU) / 2.
double LocalizationCost(const BoundingBox& a, const BoundingBox& b);

// (1 - score) / 2 when the labels agree, (1 + score) / 2 otherwise.
double ClassificationCost(double score, CategoryId det_label,
                          CategoryId gt_label);

// lambda * localization + (1 - lambda) * classification.
double UnitCost(const Detection& det, const GroundTruthInstance& gt,
                const OcCostParams& params);

// Dense (m + 1) x (n + 1) cost matrix. Row m is the dummy detection and
// column n the dummy ground truth; both carry the beta cost.
class CostMatrix {
 public:
  CostMatrix(std::size_t num_detections, std::size_t num_ground_truths,
             double fill);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t num_detections() const { return rows_ - 1; }
  std::size_t num_ground_truths() const { return cols_ - 1; }

  double& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  double at(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  bool IsDummyRow(std::size_t i) const { return i + 1 == rows_; }
  bool IsDummyCol(std::size_t j) const { return j + 1 == cols_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> entries_;
};

struct SupplyDemand {
  std::vector<std::int64_t> supplies;
  std::vector<std::int64_t> demands;
};

// Per-pair cost components kept alongside the matrix for reporting.
struct PairCostComponents {
  double localization = 0.0;
  double classification = 0.0;
};

struct TransportProblem {
  CostMatrix cost;
  SupplyDemand capacities;
  // Row-major m x n, real pairs only.
  std::vector<PairCostComponents> components;
  // m == 0 and n == 0: nothing to transport.
  bool degenerate = false;
};

// Builds the dummy-augmented matrix with unit capacities for real rows and
// columns, n units on the dummy detection and m on the dummy ground truth.
TransportProblem BuildProblem(std::span<const Detection> dets,
                              std::span<const GroundTruthInstance> gts,
                              const OcCostParams& params);

}  // namespace oceval

#endif  // OCEVAL_MATCHING_COST_H_
