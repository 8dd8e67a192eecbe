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

#include <vector>

#include <gtest/gtest.h>

#include "oceval/errors.h"
#include "oceval/synthetic.h"
#include "test_util.h"

namespace oceval {
namespace {

using testing::Det;
using testing::Gt;

TEST(NmsTest, SuppressesOverlapsWithinCategoryOnly) {
  const std::vector<Detection> dets = {
      Det(0, 0, 10, 10, 1, 0.6),  Det(1, 0, 11, 10, 1, 0.9),
      Det(1, 0, 11, 10, 2, 0.7),  Det(30, 30, 40, 40, 1, 0.5),
      Det(0, 0, 10, 10, 1, 0.01)};
  const std::vector<Detection> kept = Nms(dets, {0.05, 0.5});
  ASSERT_EQ(kept.size(), 3u);
  EXPECT_EQ(kept[0].score, 0.9);
  EXPECT_EQ(kept[1].label, 2);
  EXPECT_EQ(kept[2].score, 0.5);
}

TEST(NmsTest, ScoreThresholdIsInclusiveAndIouIsStrict) {
  const std::vector<Detection> dets = {Det(0, 0, 10, 10, 1, 0.9),
                                       Det(0, 0, 10, 5, 1, 0.3)};
  // IoU exactly 0.5 survives a 0.5 threshold.
  EXPECT_EQ(Nms(dets, {0.3, 0.5}).size(), 2u);
  EXPECT_EQ(Nms(dets, {0.3, 0.45}).size(), 1u);
  EXPECT_EQ(Nms(dets, {0.31, 0.5}).size(), 1u);
}

TEST(NmsTest, EqualScoresKeepInputOrder) {
  const std::vector<Detection> dets = {Det(0, 0, 10, 10, 1, 0.5),
                                       Det(1, 0, 11, 10, 1, 0.5)};
  const std::vector<Detection> kept = Nms(dets, {0.0, 0.5});
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].box, dets[0].box);
}

TEST(NmsTest, RejectsBadParams) {
  EXPECT_THROW(Nms({}, {1.5, 0.5}), ConfigError);
  EXPECT_THROW(Nms({}, {0.5, 0.0}), ConfigError);
}

TEST(GridTest, DefaultGridShape) {
  const std::vector<NmsParams> grid = DefaultNmsGrid();
  ASSERT_EQ(grid.size(), 18u * 7u);
  EXPECT_EQ(grid.front(), (NmsParams{0.05, 0.3}));
  EXPECT_EQ(grid[1], (NmsParams{0.05, 0.4}));
  EXPECT_EQ(grid.back(), (NmsParams{0.9, 0.9}));
}

TEST(ObjectiveTest, Parsing) {
  EXPECT_EQ(ParseTuneObjective("oc-cost"), TuneObjective::kMinimizeOcCost);
  EXPECT_EQ(ParseTuneObjective("map"), TuneObjective::kMaximizeMap);
  EXPECT_THROW(ParseTuneObjective("f1"), UsageError);
}

TEST(HistogramTest, L1OfNormalizedFrequencies) {
  const CountHistogram a = {{1, 2}, {2, 2}};
  const CountHistogram b = {{2, 1}};
  EXPECT_DOUBLE_EQ(HistogramL1(a, b), 1.0);
  EXPECT_DOUBLE_EQ(HistogramL1(a, a), 0.0);
}

class NoisyFixtureTest : public ::testing::Test {
 protected:
  void SetUp() override {
    SyntheticConfig cfg;
    cfg.kind = SceneKind::kNoisy;
    cfg.images = 30;
    cfg.seed = 3;
    raw_ = GenerateScenes(cfg);
  }
  std::vector<ImageScene> raw_;
};

TEST_F(NoisyFixtureTest, OcCostTuningDropsNoiseAndMapDoesNot) {
  const std::vector<NmsParams> grid = DefaultNmsGrid();
  const TuneResult oc = Tune(raw_, grid, TuneObjective::kMinimizeOcCost);
  const TuneResult map = Tune(raw_, grid, TuneObjective::kMaximizeMap);

  EXPECT_GT(oc.best_params.score_threshold, 0.1);
  // Only the exact detections at score 0.9 remain: (1 - 0.5) * 0.05.
  EXPECT_NEAR(oc.objective_value, 0.025, 1e-12);
  // Noise is ranked below every true positive, so mAP cannot tell.
  EXPECT_EQ(map.objective_value, 1.0);
  EXPECT_EQ(map.best_params, grid.front());

  const CountHistogram gt = GroundTruthCountHistogram(raw_);
  const double oc_l1 =
      HistogramL1(DetectionCountHistogram(ApplyNms(raw_, oc.best_params)), gt);
  const double map_l1 =
      HistogramL1(DetectionCountHistogram(ApplyNms(raw_, map.best_params)), gt);
  EXPECT_EQ(oc_l1, 0.0);
  EXPECT_GT(map_l1, oc_l1);
}

TEST_F(NoisyFixtureTest, JobsDoNotChangeResult) {
  const std::vector<NmsParams> grid = DefaultNmsGrid();
  TuneOptions serial;
  TuneOptions parallel;
  parallel.jobs = 4;
  EXPECT_EQ(Tune(raw_, grid, TuneObjective::kMinimizeOcCost, serial),
            Tune(raw_, grid, TuneObjective::kMinimizeOcCost, parallel));
}

TEST(TuneTest, RejectsEmptyInputs) {
  std::vector<ImageScene> one(1);
  EXPECT_THROW(Tune(one, {}, TuneObjective::kMaximizeMap), ConfigError);
  const std::vector<NmsParams> grid = DefaultNmsGrid();
  EXPECT_THROW(Tune({}, grid, TuneObjective::kMaximizeMap), ConfigError);
}

}  // namespace
}  // namespace oceval
