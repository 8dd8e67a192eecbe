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

// Optimal Correction Cost (OC-cost) of a single image and of a dataset.
//
// For one image the dummy-augmented transportation problem is solved
// exactly, the dummy-to-dummy flow is discarded, and the remaining flows are
// normalized to a distribution. With k matched pairs the normalizing mass is
// m + n - k, so
//
//   oc_cost = (sum of matched pair costs + beta * (m + n - 2k)) / (m + n - k).
//
// An image with no detections and no ground truths costs 0; an image where
// exactly one side is empty costs beta. The dataset value is the unweighted
// mean over images.

#ifndef OCEVAL_OCCOST_H_
#define OCEVAL_OCCOST_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "oceval/matching_cost.h"
#include "oceval/transport_solver.h"

namespace oceval {

struct ImageScene {
  ImageId image_id = 0;
  std::vector<Detection> detections;
  std::vector<GroundTruthInstance> ground_truths;
};

// One nonzero cell of the normalized plan. A missing index denotes the dummy
// side: no ground_truth means a false positive, no detection a false
// negative. The cost components are only set for matched pairs.
struct PairAssignment {
  std::optional<std::size_t> detection;
  std::optional<std::size_t> ground_truth;
  double unit_cost = 0.0;
  std::optional<double> localization;
  std::optional<double> classification;

  friend bool operator==(const PairAssignment&,
                         const PairAssignment&) = default;
};

struct ImageEvalResult {
  ImageId image_id = 0;
  double oc_cost = 0.0;
  std::size_t matched_pairs = 0;
  std::size_t num_detections = 0;
  std::size_t num_ground_truths = 0;
  std::optional<std::vector<PairAssignment>> breakdown;
  // Filled by callers that also evaluate single-image mAP.
  std::optional<double> single_image_map;
  bool single_image_map_vacuous = false;

  friend bool operator==(const ImageEvalResult&,
                         const ImageEvalResult&) = default;
};

struct DatasetReport {
  double mean_oc_cost = 0.0;
  std::vector<ImageEvalResult> per_image;
  OcCostParams params;
  std::size_t image_count = 0;
  std::optional<double> dataset_map;

  friend bool operator==(const DatasetReport& a, const DatasetReport& b) {
    return a.mean_oc_cost == b.mean_oc_cost && a.per_image == b.per_image &&
           a.params.lambda == b.params.lambda &&
           a.params.beta == b.params.beta && a.image_count == b.image_count &&
           a.dataset_map == b.dataset_map;
  }
};

struct EvalOptions {
  bool with_breakdown = false;
  // Worker threads for per-image evaluation; values < 2 run inline.
  std::size_t jobs = 1;
};

// Applies dummy-dummy zeroing and normalization to an optimal plan and
// returns the final cost. The contributing terms are summed in sorted order
// so the value does not depend on the order of detections or ground truths.
double NormalizedPlanCost(const CostMatrix& cost, const TransportPlan& plan);

ImageEvalResult ImageOcCost(std::span<const Detection> dets,
                            std::span<const GroundTruthInstance> gts,
                            const OcCostParams& params,
                            bool with_breakdown = false);

inline ImageEvalResult ImageOcCost(const ImageScene& scene,
                                   const OcCostParams& params,
                                   bool with_breakdown = false) {
  ImageEvalResult r = ImageOcCost(scene.detections, scene.ground_truths,
                                  params, with_breakdown);
  r.image_id = scene.image_id;
  return r;
}

// Throws ConfigError on an empty input. Per-image results keep input order.
DatasetReport DatasetOcCost(std::span<const ImageScene> images,
                            const OcCostParams& params,
                            const EvalOptions& options = {});

struct LambdaSweepPoint {
  double lambda = 0.0;
  double mean_oc_cost = 0.0;

  friend bool operator==(const LambdaSweepPoint&,
                         const LambdaSweepPoint&) = default;
};

std::vector<LambdaSweepPoint> LambdaSweep(std::span<const ImageScene> images,
                                          std::span<const double> lambdas,
                                          double beta,
                                          std::size_t jobs = 1);

}  // namespace oceval

#endif  // OCEVAL_OCCOST_H_
