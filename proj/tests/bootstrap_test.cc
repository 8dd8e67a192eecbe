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

#include "oceval/bootstrap.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "oceval/errors.h"
#include "oceval/map_baseline.h"
#include "oceval/random.h"
#include "oceval/synthetic.h"

namespace oceval {
namespace {

std::vector<DetectorScenes> TwoDetectors() {
  SyntheticConfig cfg;
  cfg.images = 25;
  cfg.seed = 1;
  DetectorScenes a{"a", GenerateScenes(cfg)};
  cfg.kind = SceneKind::kNoisy;
  DetectorScenes b{"b", GenerateScenes(cfg)};
  return {a, b};
}

TEST(CounterRngTest, PureFunctionOfKeyAndCounter) {
  CounterRng a(5, 1, 2);
  CounterRng b(5, 1, 2);
  CounterRng c(5, 1, 3);
  const std::uint64_t first = a.NextU64();
  EXPECT_EQ(first, b.NextU64());
  EXPECT_NE(first, c.NextU64());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.NextDouble();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(a.UniformIndex(7), 7u);
  }
}

TEST(CounterRngTest, UniformIndexIsRoughlyUniform) {
  CounterRng rng(42);
  std::vector<int> counts(10, 0);
  for (int i = 0; i < 100000; ++i) ++counts[rng.UniformIndex(10)];
  for (int c : counts) {
    EXPECT_GT(c, 9500);
    EXPECT_LT(c, 10500);
  }
}

TEST(StatsTest, HandComputed) {
  const std::vector<double> v = {4.0, 1.0, 3.0, 2.0, 5.0};
  const BootstrapStats s = ComputeBootstrapStats(v);
  EXPECT_DOUBLE_EQ(s.mean, 3.0);
  EXPECT_DOUBLE_EQ(s.stddev, std::sqrt(2.5));
  EXPECT_DOUBLE_EQ(s.p50, 3.0);
  EXPECT_DOUBLE_EQ(s.p25, 2.0);
  EXPECT_DOUBLE_EQ(s.p5, 1.2);
  EXPECT_DOUBLE_EQ(s.p95, 4.8);
  const BootstrapStats one = ComputeBootstrapStats(std::vector<double>{0.7});
  EXPECT_EQ(one.stddev, 0.0);
  EXPECT_EQ(one.p5, 0.7);
  EXPECT_EQ(one.p95, 0.7);
  // Constant samples give exactly zero spread.
  const BootstrapStats flat =
      ComputeBootstrapStats(std::vector<double>(3, 0.11511835524562833));
  EXPECT_EQ(flat.mean, 0.11511835524562833);
  EXPECT_EQ(flat.stddev, 0.0);
}

TEST(SampleTest, SizesAndUniqueness) {
  BootstrapConfig cfg;
  cfg.sample_fraction = 0.3;
  EXPECT_EQ(DrawBootstrapSample(cfg, 10, 0).size(), 3u);
  EXPECT_EQ(DrawBootstrapSample(cfg, 11, 0).size(), 4u);
  cfg.sample_fraction = 0.01;
  EXPECT_EQ(DrawBootstrapSample(cfg, 10, 0).size(), 1u);

  cfg.sample_fraction = 0.8;
  cfg.with_replacement = false;
  for (std::size_t t = 0; t < 50; ++t) {
    const std::vector<std::size_t> s = DrawBootstrapSample(cfg, 20, t);
    EXPECT_EQ(s.size(), 16u);
    EXPECT_EQ(std::set<std::size_t>(s.begin(), s.end()).size(), 16u);
    EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
  }
  cfg.sample_fraction = 1.0;
  const std::vector<std::size_t> all = DrawBootstrapSample(cfg, 9, 3);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(all[i], i);
}

TEST(SampleTest, TrialsDiffer) {
  BootstrapConfig cfg;
  EXPECT_NE(DrawBootstrapSample(cfg, 1000, 0), DrawBootstrapSample(cfg, 1000, 1));
  BootstrapConfig other = cfg;
  other.seed = 1;
  EXPECT_NE(DrawBootstrapSample(cfg, 1000, 0),
            DrawBootstrapSample(other, 1000, 0));
}

TEST(ConfigTest, Validation) {
  BootstrapConfig cfg;
  cfg.trials = 0;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg = {};
  cfg.sample_fraction = 0.0;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg.sample_fraction = 1.5;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  EXPECT_THROW(ParseBootstrapMetric("ap"), UsageError);
}

TEST(RunBootstrapTest, ReproducibleAcrossRunsAndJobs) {
  const std::vector<DetectorScenes> dets = TwoDetectors();
  BootstrapConfig cfg;
  cfg.trials = 40;
  cfg.seed = 123;
  for (BootstrapMetric metric : {BootstrapMetric::kOcCost, BootstrapMetric::kMap}) {
    BootstrapOptions serial;
    BootstrapOptions parallel;
    parallel.jobs = 4;
    const auto a = RunBootstrap(dets, cfg, metric, serial);
    EXPECT_EQ(a, RunBootstrap(dets, cfg, metric, serial));
    EXPECT_EQ(a, RunBootstrap(dets, cfg, metric, parallel));
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a[0].per_trial.size(), 40u);
  }
}

TEST(RunBootstrapTest, DegenerateConfigReproducesFullDataset) {
  const std::vector<DetectorScenes> dets = TwoDetectors();
  const BootstrapConfig cfg{1, 1.0, false, 9};
  const auto oc = RunBootstrap(dets, cfg, BootstrapMetric::kOcCost);
  const auto map = RunBootstrap(dets, cfg, BootstrapMetric::kMap);
  for (std::size_t d = 0; d < dets.size(); ++d) {
    EXPECT_EQ(oc[d].per_trial[0], DatasetOcCost(dets[d].scenes, {}).mean_oc_cost);
    EXPECT_EQ(map[d].per_trial[0], DatasetMap(dets[d].scenes, {}).map);
    EXPECT_EQ(oc[d].stats.stddev, 0.0);
  }
}

TEST(RunBootstrapTest, PairedResamplingUsesSameImages) {
  // Identical detectors must get identical per-trial values.
  std::vector<DetectorScenes> dets = TwoDetectors();
  dets[1].scenes = dets[0].scenes;
  BootstrapConfig cfg;
  cfg.trials = 10;
  const auto r = RunBootstrap(dets, cfg, BootstrapMetric::kOcCost);
  EXPECT_EQ(r[0].per_trial, r[1].per_trial);
}

TEST(RunBootstrapTest, MismatchedImagesAreRejected) {
  std::vector<DetectorScenes> dets = TwoDetectors();
  dets[1].scenes.pop_back();
  EXPECT_THROW(RunBootstrap(dets, {}, BootstrapMetric::kOcCost),
               ValidationError);
  dets = TwoDetectors();
  dets[1].scenes[0].image_id = 1000;
  EXPECT_THROW(RunBootstrap(dets, {}, BootstrapMetric::kOcCost),
               ValidationError);
  EXPECT_THROW(RunBootstrap({}, {}, BootstrapMetric::kOcCost), ConfigError);
}

}  // namespace
}  // namespace oceval
