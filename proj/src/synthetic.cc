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

#include "oceval/synthetic.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "oceval/errors.h"
#include "oceval/random.h"

namespace oceval {

namespace {

constexpr double kImageSize = 640.0;
constexpr std::size_t kGridSide = 6;
constexpr double kCellSize = kImageSize / kGridSide;
constexpr double kMinSide = 12.0;

CategoryId RandomLabel(CounterRng& rng, std::size_t categories) {
  return static_cast<CategoryId>(rng.UniformIndex(categories)) + 1;
}

double RandomInt(CounterRng& rng, double lo, double hi) {
  return std::floor(rng.Uniform(lo, hi));
}

// Integer-cornered box inside grid cell `cell`.
BoundingBox BoxInCell(CounterRng& rng, std::size_t cell) {
  const double cx = static_cast<double>(cell % kGridSide) * kCellSize;
  const double cy = static_cast<double>(cell / kGridSide) * kCellSize;
  const double cell_side = std::floor(kCellSize) - 1.0;
  const double w = RandomInt(rng, kMinSide, cell_side);
  const double h = RandomInt(rng, kMinSide, cell_side);
  const double x = std::ceil(cx) + RandomInt(rng, 0.0, cell_side - w);
  const double y = std::ceil(cy) + RandomInt(rng, 0.0, cell_side - h);
  return BoundingBox::FromXywh(x, y, w, h);
}

BoundingBox RandomBox(CounterRng& rng) {
  const double w = RandomInt(rng, kMinSide, kImageSize / 3);
  const double h = RandomInt(rng, kMinSide, kImageSize / 3);
  const double x = RandomInt(rng, 0.0, kImageSize - w);
  const double y = RandomInt(rng, 0.0, kImageSize - h);
  return BoundingBox::FromXywh(x, y, w, h);
}

BoundingBox Jitter(CounterRng& rng, const BoundingBox& b) {
  const double dx = 0.1 * b.width();
  const double dy = 0.1 * b.height();
  return BoundingBox::FromCorners(b.x1() + rng.Uniform(-dx, dx),
                                  b.y1() + rng.Uniform(-dy, dy),
                                  b.x2() + rng.Uniform(-dx, dx),
                                  b.y2() + rng.Uniform(-dy, dy));
}

}  // namespace

std::string_view ToString(SceneKind kind) {
  switch (kind) {
    case SceneKind::kPerturbed:
      return "perturbed";
    case SceneKind::kPerfect:
      return "perfect";
    case SceneKind::kMislabeled:
      return "mislabeled";
    case SceneKind::kNoisy:
      return "noisy";
  }
  return "unknown";
}

SceneKind ParseSceneKind(std::string_view text) {
  for (SceneKind k : {SceneKind::kPerturbed, SceneKind::kPerfect,
                      SceneKind::kMislabeled, SceneKind::kNoisy}) {
    if (text == ToString(k)) return k;
  }
  throw UsageError("unknown fixture kind '" + std::string(text) +
                   "' (expected perturbed, perfect, mislabeled or noisy)");
}

void SyntheticConfig::Validate() const {
  if (gts_per_image > kGridSide * kGridSide) {
    throw ConfigError("at most " + std::to_string(kGridSide * kGridSide) +
                      " ground truths per image are supported");
  }
  if (categories == 0) throw ConfigError("need at least one category");
  if (kind == SceneKind::kMislabeled && categories < 2) {
    throw ConfigError("mislabeled fixtures need at least two categories");
  }
  if (!(true_score >= 0.0 && true_score <= 1.0) ||
      !(noise_score >= 0.0 && noise_score <= 1.0)) {
    throw ConfigError("fixture scores must lie in [0, 1]");
  }
}

std::vector<ImageScene> GenerateScenes(const SyntheticConfig& config) {
  config.Validate();
  std::vector<ImageScene> scenes;
  scenes.reserve(config.images);
  for (std::size_t img = 0; img < config.images; ++img) {
    CounterRng rng(config.seed, img);
    ImageScene scene;
    scene.image_id = static_cast<ImageId>(img + 1);

    // Distinct cells via a partial shuffle.
    std::vector<std::size_t> cells(kGridSide * kGridSide);
    std::iota(cells.begin(), cells.end(), 0);
    for (std::size_t j = 0; j < config.gts_per_image; ++j) {
      const std::size_t pick =
          j + static_cast<std::size_t>(rng.UniformIndex(cells.size() - j));
      std::swap(cells[j], cells[pick]);
      scene.ground_truths.push_back(
          {BoxInCell(rng, cells[j]), RandomLabel(rng, config.categories)});
    }

    switch (config.kind) {
      case SceneKind::kPerfect:
        for (const GroundTruthInstance& g : scene.ground_truths) {
          scene.detections.emplace_back(g.box, g.label, 1.0);
        }
        break;
      case SceneKind::kMislabeled:
        for (const GroundTruthInstance& g : scene.ground_truths) {
          const CategoryId wrong =
              g.label % static_cast<CategoryId>(config.categories) + 1;
          scene.detections.emplace_back(g.box, wrong, 1.0);
        }
        break;
      case SceneKind::kNoisy:
        for (const GroundTruthInstance& g : scene.ground_truths) {
          scene.detections.emplace_back(g.box, g.label, config.true_score);
        }
        for (std::size_t k = 0; k < config.noise_per_image; ++k) {
          scene.detections.emplace_back(RandomBox(rng),
                                        RandomLabel(rng, config.categories),
                                        config.noise_score);
        }
        break;
      case SceneKind::kPerturbed:
        for (std::size_t k = 0; k < config.dets_per_image; ++k) {
          if (k < scene.ground_truths.size()) {
            const GroundTruthInstance& g = scene.ground_truths[k];
            const CategoryId label = rng.NextDouble() < 0.1
                                         ? RandomLabel(rng, config.categories)
                                         : g.label;
            scene.detections.emplace_back(Jitter(rng, g.box), label,
                                          rng.Uniform(0.3, 1.0));
          } else {
            scene.detections.emplace_back(RandomBox(rng),
                                          RandomLabel(rng, config.categories),
                                          rng.Uniform(0.0, 0.5));
          }
        }
        break;
    }
    scenes.push_back(std::move(scene));
  }
  return scenes;
}

}  // namespace oceval
