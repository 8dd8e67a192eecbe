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

// COCO-style mean average precision, used as the comparison baseline.
//
// Detections are matched greedily per image and category in descending score
// order; each takes the unmatched ground truth with the highest IoU at or
// above the threshold. AP is the interpolated precision envelope sampled at
// equally spaced recall values. The dataset mAP averages AP over IoU
// thresholds, then over categories that have at least one ground truth.

#ifndef OCEVAL_MAP_BASELINE_H_
#define OCEVAL_MAP_BASELINE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "oceval/matching_cost.h"
#include "oceval/occost.h"

namespace oceval {

struct MapParams {
  // 0.50:0.05:0.95.
  std::vector<double> iou_thresholds = CocoIouThresholds();
  int recall_points = 101;
  // Per image and category; unset means no cap.
  std::optional<std::size_t> max_detections;

  static std::vector<double> CocoIouThresholds();
  // Single threshold at 0.5.
  static MapParams Voc();

  // Throws ConfigError for empty, unsorted, duplicated or out-of-range
  // thresholds, or fewer than two recall points.
  void Validate() const;
};

struct MatchResult {
  std::size_t detection = 0;
  bool true_positive = false;

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

// Matches the detections of `category` against that category's ground
// truths. Results are in ranked order (descending score, ties by input
// order) and index into `dets`. Duplicates of an already matched ground
// truth are false positives.
std::vector<MatchResult> MatchGreedy(std::span<const Detection> dets,
                                     std::span<const GroundTruthInstance> gts,
                                     CategoryId category, double iou_threshold);

struct PrCurve {
  CategoryId category = 0;
  double iou_threshold = 0.0;
  std::vector<std::pair<double, double>> points;  // (recall, precision)
  double ap = 0.0;
};

// Raw precision/recall points along the ranked flags, with the interpolated
// AP attached.
PrCurve ComputePrCurve(const std::vector<bool>& ranked_true_positive,
                       std::size_t num_gt, int recall_points,
                       CategoryId category = 0, double iou_threshold = 0.0);

// nullopt when there are no ground truths and no detections; 0 when there
// are detections but no ground truths.
std::optional<double> AveragePrecision(
    const std::vector<bool>& ranked_true_positive, std::size_t num_gt,
    int recall_points);

struct CategoryAp {
  CategoryId category = 0;
  std::size_t num_gt = 0;
  std::size_t num_detections = 0;
  std::vector<double> ap_per_threshold;
  double ap = 0.0;
};

struct MapResult {
  double map = 0.0;
  std::vector<CategoryAp> per_category;
};

// Per-image matching outcome, computed once and pooled as often as needed.
struct ImageMatches {
  struct Category {
    std::size_t num_gt = 0;
    std::vector<double> ranked_scores;
    // [threshold][rank]
    std::vector<std::vector<bool>> true_positive;
  };
  std::map<CategoryId, Category> categories;
};

ImageMatches MatchImage(const ImageScene& scene, const MapParams& params);

// Pools the selected images (repeats allowed) in selection order.
MapResult PoolMap(std::span<const ImageMatches> images,
                  std::span<const std::size_t> selection,
                  const MapParams& params);

// mAP over the whole dataset. 0 when no category has a ground truth.
MapResult DatasetMap(std::span<const ImageScene> images,
                     const MapParams& params);

struct SingleImageMap {
  double value = 0.0;
  // True for an image with neither detections nor ground truths, which is
  // scored 1.0 by convention.
  bool vacuous = false;
};

// mAP of one image treated as a dataset. Categories present only among the
// detections count with AP 0.
SingleImageMap SingleImageMapOf(const ImageScene& scene,
                                const MapParams& params);

}  // namespace oceval

#endif  // OCEVAL_MAP_BASELINE_H_
