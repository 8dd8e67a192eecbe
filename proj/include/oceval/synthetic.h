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

// Synthetic scene generator for tests, benchmarks and the gen-fixture
// command. Ground-truth boxes have integer coordinates and never overlap each
// other: each one sits in its own cell of a square grid over the image.

#ifndef OCEVAL_SYNTHETIC_H_
#define OCEVAL_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "oceval/occost.h"

namespace oceval {

enum class SceneKind {
  // Jittered boxes, random scores, occasional wrong labels, and random
  // extra detections when dets_per_image exceeds gts_per_image.
  kPerturbed,
  // One exact, correctly labeled, score-1 detection per ground truth.
  kPerfect,
  // Exact boxes with score 1 but every label wrong.
  kMislabeled,
  // Exact, correctly labeled detections at true_score plus noise_per_image
  // random detections at noise_score.
  kNoisy,
};

std::string_view ToString(SceneKind kind);
// "perturbed", "perfect", "mislabeled" or "noisy"; UsageError otherwise.
SceneKind ParseSceneKind(std::string_view text);

struct SyntheticConfig {
  SceneKind kind = SceneKind::kPerturbed;
  std::size_t images = 100;
  std::size_t gts_per_image = 7;
  std::size_t dets_per_image = 7;
  std::size_t noise_per_image = 10;
  std::size_t categories = 3;
  std::uint64_t seed = 0;
  double true_score = 0.9;
  double noise_score = 0.1;

  // ConfigError when the grid cannot hold gts_per_image boxes, categories is
  // zero (or one for kMislabeled), or a score is outside [0, 1].
  void Validate() const;
};

// Image ids are 1..images; category ids are 1..categories.
std::vector<ImageScene> GenerateScenes(const SyntheticConfig& config);

}  // namespace oceval

#endif  // OCEVAL_SYNTHETIC_H_
