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

#include "oceval/occost.h"

#include <algorithm>

#include "oceval/errors.h"
#include "oceval/numeric.h"
#include "oceval/parallel.h"

namespace oceval {

double NormalizedPlanCost(const CostMatrix& cost, const TransportPlan& plan) {
  std::vector<double> terms;
  std::int64_t mass = 0;
  for (std::size_t i = 0; i < plan.rows(); ++i) {
    for (std::size_t j = 0; j < plan.cols(); ++j) {
      if (cost.IsDummyRow(i) && cost.IsDummyCol(j)) continue;
      const std::int64_t flow = plan.at(i, j);
      for (std::int64_t f = 0; f < flow; ++f) terms.push_back(cost.at(i, j));
      mass += flow;
    }
  }
  if (mass == 0) return 0.0;
  std::sort(terms.begin(), terms.end());
  return Sum(terms) / static_cast<double>(mass);
}

ImageEvalResult ImageOcCost(std::span<const Detection> dets,
                            std::span<const GroundTruthInstance> gts,
                            const OcCostParams& params, bool with_breakdown) {
  params.Validate();
  const std::size_t m = dets.size();
  const std::size_t n = gts.size();

  ImageEvalResult result;
  result.num_detections = m;
  result.num_ground_truths = n;

  if (m == 0 || n == 0) {
    // Every object goes to the dummy side at cost beta; nothing to solve.
    result.oc_cost = (m == 0 && n == 0) ? 0.0 : params.beta;
    if (with_breakdown) {
      std::vector<PairAssignment> rows;
      for (std::size_t i = 0; i < m; ++i) {
        rows.push_back({i, std::nullopt, params.beta, std::nullopt,
                        std::nullopt});
      }
      for (std::size_t j = 0; j < n; ++j) {
        rows.push_back({std::nullopt, j, params.beta, std::nullopt,
                        std::nullopt});
      }
      result.breakdown = std::move(rows);
    }
    return result;
  }

  const TransportProblem problem = BuildProblem(dets, gts, params);
  const TransportPlan plan = Solve(problem.cost, problem.capacities);
  result.matched_pairs = plan.MatchedPairs();
  result.oc_cost = NormalizedPlanCost(problem.cost, plan);

  if (with_breakdown) {
    std::vector<PairAssignment> rows;
    for (std::size_t i = 0; i <= m; ++i) {
      for (std::size_t j = 0; j <= n; ++j) {
        if (plan.at(i, j) == 0 || (i == m && j == n)) continue;
        PairAssignment row;
        row.unit_cost = problem.cost.at(i, j);
        if (i < m) row.detection = i;
        if (j < n) row.ground_truth = j;
        if (i < m && j < n) {
          const PairCostComponents& c = problem.components[i * n + j];
          row.localization = c.localization;
          row.classification = c.classification;
        }
        rows.push_back(row);
      }
    }
    result.breakdown = std::move(rows);
  }
  return result;
}

DatasetReport DatasetOcCost(std::span<const ImageScene> images,
                            const OcCostParams& params,
                            const EvalOptions& options) {
  params.Validate();
  if (images.empty()) {
    throw ConfigError("dataset OC-cost needs at least one image");
  }
  DatasetReport report;
  report.params = params;
  report.image_count = images.size();
  report.per_image.resize(images.size());
  ParallelFor(images.size(), options.jobs, [&](std::size_t i) {
    report.per_image[i] =
        ImageOcCost(images[i], params, options.with_breakdown);
  });

  CompensatedSum total;
  for (const ImageEvalResult& r : report.per_image) total.Add(r.oc_cost);
  report.mean_oc_cost = total.Value() / static_cast<double>(images.size());
  return report;
}

std::vector<LambdaSweepPoint> LambdaSweep(std::span<const ImageScene> images,
                                          std::span<const double> lambdas,
                                          double beta, std::size_t jobs) {
  std::vector<LambdaSweepPoint> points;
  points.reserve(lambdas.size());
  for (double lambda : lambdas) {
    const OcCostParams params{lambda, beta};
    params.Validate();
    const DatasetReport report =
        DatasetOcCost(images, params, EvalOptions{false, jobs});
    points.push_back({lambda, report.mean_oc_cost});
  }
  return points;
}

}  // namespace oceval
