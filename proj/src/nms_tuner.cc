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

#include "oceval/nms_tuner.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "oceval/errors.h"
#include "oceval/parallel.h"

namespace oceval {

void NmsParams::Validate() const {
  if (!(score_threshold >= 0.0 && score_threshold <= 1.0)) {
    std::ostringstream msg;
    msg << "NMS score threshold " << score_threshold << " outside [0, 1]";
    throw ConfigError(msg.str());
  }
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
    std::ostringstream msg;
    msg << "NMS IoU threshold " << iou_threshold << " outside (0, 1]";
    throw ConfigError(msg.str());
  }
}

std::vector<Detection> Nms(std::span<const Detection> dets,
                           const NmsParams& params) {
  params.Validate();
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < dets.size(); ++i) {
    if (dets[i].score >= params.score_threshold) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return dets[a].score > dets[b].score;
                   });

  std::vector<std::size_t> kept;
  for (std::size_t candidate : order) {
    const Detection& d = dets[candidate];
    const bool suppressed =
        std::any_of(kept.begin(), kept.end(), [&](std::size_t k) {
          return dets[k].label == d.label &&
                 Iou(dets[k].box, d.box) > params.iou_threshold;
        });
    if (!suppressed) kept.push_back(candidate);
  }

  std::vector<Detection> out;
  out.reserve(kept.size());
  for (std::size_t k : kept) out.push_back(dets[k]);
  return out;
}

std::string_view ToString(TuneObjective objective) {
  switch (objective) {
    case TuneObjective::kMinimizeOcCost:
      return "oc-cost";
    case TuneObjective::kMaximizeMap:
      return "map";
  }
  return "unknown";
}

TuneObjective ParseTuneObjective(std::string_view text) {
  if (text == "oc-cost") return TuneObjective::kMinimizeOcCost;
  if (text == "map") return TuneObjective::kMaximizeMap;
  throw UsageError("unknown objective '" + std::string(text) +
                   "' (expected oc-cost or map)");
}

std::vector<NmsParams> MakeNmsGrid(std::span<const double> score_thresholds,
                                   std::span<const double> iou_thresholds) {
  std::vector<NmsParams> grid;
  for (double s : score_thresholds) {
    for (double t : iou_thresholds) grid.push_back({s, t});
  }
  return grid;
}

std::vector<NmsParams> DefaultNmsGrid() {
  std::vector<double> scores;
  for (int k = 1; k <= 18; ++k) scores.push_back(k / 20.0);
  std::vector<double> ious;
  for (int k = 3; k <= 9; ++k) ious.push_back(k / 10.0);
  return MakeNmsGrid(scores, ious);
}

std::vector<ImageScene> ApplyNms(std::span<const ImageScene> raw,
                                 const NmsParams& params) {
  std::vector<ImageScene> out;
  out.reserve(raw.size());
  for (const ImageScene& scene : raw) {
    out.push_back({scene.image_id, Nms(scene.detections, params),
                   scene.ground_truths});
  }
  return out;
}

TuneResult Tune(std::span<const ImageScene> raw, std::span<const NmsParams> grid,
                TuneObjective objective, const TuneOptions& options) {
  if (grid.empty()) throw ConfigError("NMS tuning grid is empty");
  if (raw.empty()) throw ConfigError("NMS tuning needs at least one image");
  for (const NmsParams& p : grid) p.Validate();
  options.oc_params.Validate();
  options.map_params.Validate();

  std::vector<double> values(grid.size());
  // Parallelism is spent on grid points; each point runs its images inline.
  ParallelFor(grid.size(), options.jobs, [&](std::size_t g) {
    const std::vector<ImageScene> filtered = ApplyNms(raw, grid[g]);
    values[g] = objective == TuneObjective::kMinimizeOcCost
                    ? DatasetOcCost(filtered, options.oc_params).mean_oc_cost
                    : DatasetMap(filtered, options.map_params).map;
  });

  TuneResult result;
  result.objective_kind = objective;
  std::size_t best = 0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    result.grid.emplace_back(grid[g], values[g]);
    const bool better = objective == TuneObjective::kMinimizeOcCost
                            ? values[g] < values[best]
                            : values[g] > values[best];
    if (better) best = g;
  }
  result.best_params = grid[best];
  result.objective_value = values[best];
  return result;
}

namespace {

CountHistogram Histogram(std::span<const ImageScene> images, bool detections) {
  CountHistogram h;
  for (const ImageScene& s : images) {
    ++h[detections ? s.detections.size() : s.ground_truths.size()];
  }
  return h;
}

double Total(const CountHistogram& h) {
  std::size_t total = 0;
  for (const auto& [count, images] : h) total += images;
  return static_cast<double>(total);
}

}  // namespace

CountHistogram DetectionCountHistogram(std::span<const ImageScene> images) {
  return Histogram(images, true);
}

CountHistogram GroundTruthCountHistogram(std::span<const ImageScene> images) {
  return Histogram(images, false);
}

double HistogramL1(const CountHistogram& a, const CountHistogram& b) {
  const double total_a = Total(a);
  const double total_b = Total(b);
  auto freq = [](const CountHistogram& h, std::size_t key, double total) {
    const auto it = h.find(key);
    return it == h.end() || total == 0.0
               ? 0.0
               : static_cast<double>(it->second) / total;
  };
  CountHistogram keys = a;
  keys.insert(b.begin(), b.end());
  double distance = 0.0;
  for (const auto& [key, unused] : keys) {
    distance += std::abs(freq(a, key, total_a) - freq(b, key, total_b));
  }
  return distance;
}

}  // namespace oceval
