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

#ifndef OCEVAL_NMS_TUNER_H_
#define OCEVAL_NMS_TUNER_H_

#include <cstddef>
#include <map>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "oceval/map_baseline.h"
#include "oceval/matching_cost.h"
#include "oceval/occost.h"

namespace oceval {

struct NmsParams {
  double score_threshold = 0.05;
  double iou_threshold = 0.5;

  // score_threshold in [0, 1], iou_threshold in (0, 1]; ConfigError otherwise.
  void Validate() const;

  friend bool operator==(const NmsParams&, const NmsParams&) = default;
};

// Score filtering followed by greedy class-wise hard NMS. Detections with
// score < score_threshold are dropped; within a category a detection is
// suppressed when its IoU with an already kept one exceeds iou_threshold.
// Output is sorted by descending score, ties by input order.
std::vector<Detection> Nms(std::span<const Detection> dets,
                           const NmsParams& params);

enum class TuneObjective { kMinimizeOcCost, kMaximizeMap };

std::string_view ToString(TuneObjective objective);
// Accepts "oc-cost" and "map"; UsageError otherwise.
TuneObjective ParseTuneObjective(std::string_view text);

struct TuneResult {
  NmsParams best_params;
  double objective_value = 0.0;
  std::vector<std::pair<NmsParams, double>> grid;
  TuneObjective objective_kind = TuneObjective::kMinimizeOcCost;

  friend bool operator==(const TuneResult&, const TuneResult&) = default;
};

// score_threshold in {0.05, 0.10, ..., 0.90} x iou_threshold in
// {0.3, 0.4, ..., 0.9}, score-major.
std::vector<NmsParams> DefaultNmsGrid();

std::vector<NmsParams> MakeNmsGrid(std::span<const double> score_thresholds,
                                   std::span<const double> iou_thresholds);

struct TuneOptions {
  OcCostParams oc_params;
  MapParams map_params;
  std::size_t jobs = 1;
};

// Exhaustive grid search. `raw` holds the unfiltered detections; its
// ground truths are used as-is. The first grid point wins ties. Throws
// ConfigError on an empty grid or an empty dataset.
TuneResult Tune(std::span<const ImageScene> raw, std::span<const NmsParams> grid,
                TuneObjective objective, const TuneOptions& options = {});

// Copy of `raw` with NMS applied to every image.
std::vector<ImageScene> ApplyNms(std::span<const ImageScene> raw,
                                 const NmsParams& params);

// Number of images per per-image object count.
using CountHistogram = std::map<std::size_t, std::size_t>;

CountHistogram DetectionCountHistogram(std::span<const ImageScene> images);
CountHistogram GroundTruthCountHistogram(std::span<const ImageScene> images);

// L1 distance between the two histograms normalized to frequencies.
double HistogramL1(const CountHistogram& a, const CountHistogram& b);

}  // namespace oceval

#endif  // OCEVAL_NMS_TUNER_H_
