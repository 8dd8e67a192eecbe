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

#include "oceval/map_baseline.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "oceval/errors.h"
#include "oceval/numeric.h"

namespace oceval {

std::vector<double> MapParams::CocoIouThresholds() {
  std::vector<double> t;
  for (int k = 10; k <= 19; ++k) t.push_back(k / 20.0);
  return t;
}

MapParams MapParams::Voc() {
  MapParams p;
  p.iou_thresholds = {0.5};
  return p;
}

void MapParams::Validate() const {
  if (iou_thresholds.empty()) throw ConfigError("no IoU thresholds given");
  for (std::size_t i = 0; i < iou_thresholds.size(); ++i) {
    const double t = iou_thresholds[i];
    if (!(t > 0.0 && t <= 1.0)) {
      std::ostringstream msg;
      msg << "IoU threshold " << t << " outside (0, 1]";
      throw ConfigError(msg.str());
    }
    if (i > 0 && !(iou_thresholds[i - 1] < t)) {
      throw ConfigError("IoU thresholds must be sorted and unique");
    }
  }
  if (recall_points < 2) throw ConfigError("need at least two recall points");
}

namespace {

// Indices of the detections of `category`, best score first.
std::vector<std::size_t> RankedDetections(std::span<const Detection> dets,
                                          CategoryId category) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < dets.size(); ++i) {
    if (dets[i].label == category) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return dets[a].score > dets[b].score;
                   });
  return order;
}

std::vector<std::size_t> CategoryGts(std::span<const GroundTruthInstance> gts,
                                     CategoryId category) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < gts.size(); ++j) {
    if (gts[j].label == category) out.push_back(j);
  }
  return out;
}

// Greedy matching over pre-ranked detection indices.
std::vector<bool> MatchRanked(std::span<const Detection> dets,
                              std::span<const std::size_t> ranked,
                              std::span<const GroundTruthInstance> gts,
                              std::span<const std::size_t> candidates,
                              double iou_threshold) {
  std::vector<bool> taken(candidates.size(), false);
  std::vector<bool> flags;
  flags.reserve(ranked.size());
  for (std::size_t d : ranked) {
    double best_iou = -1.0;
    std::size_t best = candidates.size();
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (taken[c]) continue;
      const double iou = Iou(dets[d].box, gts[candidates[c]].box);
      if (iou >= iou_threshold && iou > best_iou) {
        best_iou = iou;
        best = c;
      }
    }
    if (best != candidates.size()) taken[best] = true;
    flags.push_back(best != candidates.size());
  }
  return flags;
}

}  // namespace

std::vector<MatchResult> MatchGreedy(std::span<const Detection> dets,
                                     std::span<const GroundTruthInstance> gts,
                                     CategoryId category,
                                     double iou_threshold) {
  const std::vector<std::size_t> ranked = RankedDetections(dets, category);
  const std::vector<std::size_t> candidates = CategoryGts(gts, category);
  const std::vector<bool> flags =
      MatchRanked(dets, ranked, gts, candidates, iou_threshold);
  std::vector<MatchResult> out;
  out.reserve(ranked.size());
  for (std::size_t r = 0; r < ranked.size(); ++r) {
    out.push_back({ranked[r], flags[r]});
  }
  return out;
}

PrCurve ComputePrCurve(const std::vector<bool>& ranked_true_positive,
                       std::size_t num_gt, int recall_points,
                       CategoryId category, double iou_threshold) {
  PrCurve curve;
  curve.category = category;
  curve.iou_threshold = iou_threshold;
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (bool is_tp : ranked_true_positive) {
    (is_tp ? tp : fp) += 1;
    const double recall =
        num_gt == 0 ? 0.0
                    : static_cast<double>(tp) / static_cast<double>(num_gt);
    const double precision =
        static_cast<double>(tp) / static_cast<double>(tp + fp);
    curve.points.emplace_back(recall, precision);
  }
  if (num_gt == 0) return curve;

  // Precision envelope: best precision at any deeper rank.
  std::vector<double> envelope(curve.points.size());
  double running = 0.0;
  for (std::size_t i = curve.points.size(); i-- > 0;) {
    running = std::max(running, curve.points[i].second);
    envelope[i] = running;
  }
  CompensatedSum total;
  std::size_t first = 0;
  for (int r = 0; r < recall_points; ++r) {
    const double target = static_cast<double>(r) / (recall_points - 1);
    while (first < curve.points.size() && curve.points[first].first < target) {
      ++first;
    }
    if (first == curve.points.size()) break;
    total.Add(envelope[first]);
  }
  curve.ap = total.Value() / recall_points;
  return curve;
}

std::optional<double> AveragePrecision(
    const std::vector<bool>& ranked_true_positive, std::size_t num_gt,
    int recall_points) {
  if (num_gt == 0) {
    if (ranked_true_positive.empty()) return std::nullopt;
    return 0.0;
  }
  return ComputePrCurve(ranked_true_positive, num_gt, recall_points).ap;
}

ImageMatches MatchImage(const ImageScene& scene, const MapParams& params) {
  std::set<CategoryId> categories;
  for (const Detection& d : scene.detections) categories.insert(d.label);
  for (const GroundTruthInstance& g : scene.ground_truths) {
    categories.insert(g.label);
  }

  ImageMatches out;
  for (CategoryId category : categories) {
    std::vector<std::size_t> ranked =
        RankedDetections(scene.detections, category);
    if (params.max_detections && ranked.size() > *params.max_detections) {
      ranked.resize(*params.max_detections);
    }
    const std::vector<std::size_t> candidates =
        CategoryGts(scene.ground_truths, category);

    ImageMatches::Category& entry = out.categories[category];
    entry.num_gt = candidates.size();
    for (std::size_t d : ranked) {
      entry.ranked_scores.push_back(scene.detections[d].score);
    }
    for (double t : params.iou_thresholds) {
      entry.true_positive.push_back(MatchRanked(
          scene.detections, ranked, scene.ground_truths, candidates, t));
    }
  }
  return out;
}

MapResult PoolMap(std::span<const ImageMatches> images,
                  std::span<const std::size_t> selection,
                  const MapParams& params) {
  std::set<CategoryId> categories;
  for (std::size_t idx : selection) {
    for (const auto& [category, unused] : images[idx].categories) {
      categories.insert(category);
    }
  }

  struct Entry {
    double score;
    const ImageMatches::Category* source;
    std::size_t rank;
  };

  MapResult result;
  std::vector<double> category_aps;
  for (CategoryId category : categories) {
    CategoryAp cat;
    cat.category = category;
    std::vector<Entry> pooled;
    for (std::size_t idx : selection) {
      const auto it = images[idx].categories.find(category);
      if (it == images[idx].categories.end()) continue;
      cat.num_gt += it->second.num_gt;
      for (std::size_t r = 0; r < it->second.ranked_scores.size(); ++r) {
        pooled.push_back({it->second.ranked_scores[r], &it->second, r});
      }
    }
    std::stable_sort(pooled.begin(), pooled.end(),
                     [](const Entry& a, const Entry& b) {
                       return a.score > b.score;
                     });
    cat.num_detections = pooled.size();
    if (cat.num_gt == 0) {
      // Excluded from the dataset mean; reported for completeness.
      result.per_category.push_back(std::move(cat));
      continue;
    }
    std::vector<bool> flags(pooled.size());
    for (std::size_t t = 0; t < params.iou_thresholds.size(); ++t) {
      for (std::size_t p = 0; p < pooled.size(); ++p) {
        flags[p] = pooled[p].source->true_positive[t][pooled[p].rank];
      }
      cat.ap_per_threshold.push_back(
          *AveragePrecision(flags, cat.num_gt, params.recall_points));
    }
    cat.ap = Mean(cat.ap_per_threshold);
    category_aps.push_back(cat.ap);
    result.per_category.push_back(std::move(cat));
  }
  result.map = Mean(category_aps);
  return result;
}

MapResult DatasetMap(std::span<const ImageScene> images,
                     const MapParams& params) {
  params.Validate();
  std::vector<ImageMatches> matches;
  matches.reserve(images.size());
  for (const ImageScene& scene : images) {
    matches.push_back(MatchImage(scene, params));
  }
  std::vector<std::size_t> selection(images.size());
  std::iota(selection.begin(), selection.end(), 0);
  return PoolMap(matches, selection, params);
}

SingleImageMap SingleImageMapOf(const ImageScene& scene,
                                const MapParams& params) {
  params.Validate();
  if (scene.detections.empty() && scene.ground_truths.empty()) {
    return {1.0, true};
  }
  const ImageMatches matches = MatchImage(scene, params);
  const std::size_t only = 0;
  const MapResult pooled =
      PoolMap(std::span<const ImageMatches>(&matches, 1),
              std::span<const std::size_t>(&only, 1), params);
  std::vector<double> aps;
  for (const CategoryAp& cat : pooled.per_category) {
    aps.push_back(cat.num_gt == 0 ? 0.0 : cat.ap);
  }
  return {Mean(aps), false};
}

}  // namespace oceval
