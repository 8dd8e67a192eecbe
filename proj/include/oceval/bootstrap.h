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

// Bootstrap consistency analysis: the dataset metric is recomputed on many
// resampled image multisets to see how stable a ranking of detectors is.
// Every detector sees the same multiset within a trial.

#ifndef OCEVAL_BOOTSTRAP_H_
#define OCEVAL_BOOTSTRAP_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oceval/map_baseline.h"
#include "oceval/matching_cost.h"
#include "oceval/occost.h"

namespace oceval {

struct BootstrapConfig {
  std::size_t trials = 100;
  double sample_fraction = 0.3;
  bool with_replacement = true;
  std::uint64_t seed = 0;

  void Validate() const;

  friend bool operator==(const BootstrapConfig&,
                         const BootstrapConfig&) = default;
};

enum class BootstrapMetric { kOcCost, kMap };

std::string_view ToString(BootstrapMetric metric);
// "oc-cost" or "map"; UsageError otherwise.
BootstrapMetric ParseBootstrapMetric(std::string_view text);

struct BootstrapStats {
  double mean = 0.0;
  // Sample standard deviation; 0 for a single trial.
  double stddev = 0.0;
  // Linear interpolation between order statistics.
  double p5 = 0.0;
  double p25 = 0.0;
  double p50 = 0.0;
  double p75 = 0.0;
  double p95 = 0.0;

  friend bool operator==(const BootstrapStats&,
                         const BootstrapStats&) = default;
};

BootstrapStats ComputeBootstrapStats(std::span<const double> values);

struct BootstrapReport {
  std::string detector;
  BootstrapMetric metric = BootstrapMetric::kOcCost;
  BootstrapConfig config;
  std::vector<double> per_trial;
  BootstrapStats stats;

  friend bool operator==(const BootstrapReport&,
                         const BootstrapReport&) = default;
};

// Image indices drawn for one trial, sorted ascending. The sample size is
// ceil(fraction * num_images). Draw d of trial t uses a generator keyed by
// (seed, t, d).
std::vector<std::size_t> DrawBootstrapSample(const BootstrapConfig& config,
                                             std::size_t num_images,
                                             std::size_t trial);

struct DetectorScenes {
  std::string name;
  std::vector<ImageScene> scenes;
};

struct BootstrapOptions {
  OcCostParams oc_params;
  MapParams map_params;
  std::size_t jobs = 1;
};

// Throws ValidationError if the detectors do not cover the same image ids in
// the same order, ConfigError for an invalid config or empty input.
std::vector<BootstrapReport> RunBootstrap(
    std::span<const DetectorScenes> detectors, const BootstrapConfig& config,
    BootstrapMetric metric, const BootstrapOptions& options = {});

}  // namespace oceval

#endif  // OCEVAL_BOOTSTRAP_H_
