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

#include "oceval/matching_cost.h"

#include <cmath>
#include <sstream>

#include "oceval/errors.h"

namespace oceval {

Detection::Detection(BoundingBox box, CategoryId label, double score)
    : box(box), label(label), score(score) {
  if (!(score >= 0.0 && score <= 1.0)) {
    std::ostringstream msg;
    msg << "detection score " << score << " outside [0, 1]";
    throw InputError(msg.str());
  }
}

void OcCostParams::Validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    std::ostringstream msg;
    msg << "lambda must lie in [0, 1], got " << lambda;
    throw ConfigError(msg.str());
  }
  if (!(beta >= 0.0 && beta <= 1.0)) {
    std::ostringstream msg;
    msg << "beta must lie in [0, 1], got " << beta;
    throw ConfigError(msg.str());
  }
}

double LocalizationCost(const BoundingBox& a, const BoundingBox& b) {
  return (1.0 - Giou(a, b)) / 2.0;
}

double ClassificationCost(double score, CategoryId det_label,
                          CategoryId gt_label) {
  return det_label == gt_label ? (1.0 - score) / 2.0 : (1.0 + score) / 2.0;
}

namespace {

PairCostComponents Components(const Detection& det,
                              const GroundTruthInstance& gt) {
  return {LocalizationCost(det.box, gt.box),
          ClassificationCost(det.score, det.label, gt.label)};
}

double Combine(const PairCostComponents& c, double lambda) {
  return lambda * c.localization + (1.0 - lambda) * c.classification;
}

}  // namespace

double UnitCost(const Detection& det, const GroundTruthInstance& gt,
                const OcCostParams& params) {
  return Combine(Components(det, gt), params.lambda);
}

CostMatrix::CostMatrix(std::size_t num_detections,
                       std::size_t num_ground_truths, double fill)
    : rows_(num_detections + 1),
      cols_(num_ground_truths + 1),
      entries_(rows_ * cols_, fill) {}

TransportProblem BuildProblem(std::span<const Detection> dets,
                              std::span<const GroundTruthInstance> gts,
                              const OcCostParams& params) {
  params.Validate();
  const std::size_t m = dets.size();
  const std::size_t n = gts.size();

  TransportProblem problem{CostMatrix(m, n, params.beta), {}, {}, m == 0 && n == 0};
  problem.components.reserve(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const PairCostComponents c = Components(dets[i], gts[j]);
      problem.components.push_back(c);
      problem.cost.at(i, j) = Combine(c, params.lambda);
    }
  }

  problem.capacities.supplies.assign(m + 1, 1);
  problem.capacities.supplies[m] = static_cast<std::int64_t>(n);
  problem.capacities.demands.assign(n + 1, 1);
  problem.capacities.demands[n] = static_cast<std::int64_t>(m);
  return problem;
}

}  // namespace oceval
