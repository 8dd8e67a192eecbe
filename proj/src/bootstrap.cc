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
#include <numeric>
#include <sstream>

#include "oceval/errors.h"
#include "oceval/numeric.h"
#include "oceval/parallel.h"
#include "oceval/random.h"

namespace oceval {

void BootstrapConfig::Validate() const {
  if (trials < 1) throw ConfigError("bootstrap needs at least one trial");
  if (!(sample_fraction > 0.0 && sample_fraction <= 1.0)) {
    std::ostringstream msg;
    msg << "sample fraction " << sample_fraction << " outside (0, 1]";
    throw ConfigError(msg.str());
  }
}

std::string_view ToString(BootstrapMetric metric) {
  switch (metric) {
    case BootstrapMetric::kOcCost:
      return "oc-cost";
    case BootstrapMetric::kMap:
      return "map";
  }
  return "unknown";
}

BootstrapMetric ParseBootstrapMetric(std::string_view text) {
  if (text == "oc-cost") return BootstrapMetric::kOcCost;
  if (text == "map") return BootstrapMetric::kMap;
  throw UsageError("unknown metric '" + std::string(text) +
                   "' (expected oc-cost or map)");
}

namespace {

double Percentile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

std::size_t SampleSize(double fraction, std::size_t n) {
  // The slack keeps e.g. 0.3 * 10 from rounding up to 4.
  const double raw = std::ceil(fraction * static_cast<double>(n) - 1e-9);
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(raw, 1.0)),
                                 1, n);
}

}  // namespace

BootstrapStats ComputeBootstrapStats(std::span<const double> values) {
  BootstrapStats stats;
  if (values.empty()) return stats;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  // Rounding can push the mean a hair outside the sample range.
  stats.mean = std::clamp(Mean(values), sorted.front(), sorted.back());
  if (values.size() > 1) {
    CompensatedSum squares;
    for (double v : values) squares.Add((v - stats.mean) * (v - stats.mean));
    stats.stddev =
        std::sqrt(squares.Value() / static_cast<double>(values.size() - 1));
  }
  stats.p5 = Percentile(sorted, 0.05);
  stats.p25 = Percentile(sorted, 0.25);
  stats.p50 = Percentile(sorted, 0.50);
  stats.p75 = Percentile(sorted, 0.75);
  stats.p95 = Percentile(sorted, 0.95);
  return stats;
}

std::vector<std::size_t> DrawBootstrapSample(const BootstrapConfig& config,
                                             std::size_t num_images,
                                             std::size_t trial) {
  config.Validate();
  if (num_images == 0) throw ConfigError("cannot resample an empty dataset");
  const std::size_t size = SampleSize(config.sample_fraction, num_images);
  std::vector<std::size_t> sample;
  sample.reserve(size);
  if (config.with_replacement) {
    for (std::size_t d = 0; d < size; ++d) {
      CounterRng rng(config.seed, trial, d);
      sample.push_back(static_cast<std::size_t>(rng.UniformIndex(num_images)));
    }
  } else {
    // Partial Fisher-Yates shuffle.
    std::vector<std::size_t> pool(num_images);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t d = 0; d < size; ++d) {
      CounterRng rng(config.seed, trial, d);
      const std::size_t pick =
          d + static_cast<std::size_t>(rng.UniformIndex(num_images - d));
      std::swap(pool[d], pool[pick]);
      sample.push_back(pool[d]);
    }
  }
  std::sort(sample.begin(), sample.end());
  return sample;
}

std::vector<BootstrapReport> RunBootstrap(
    std::span<const DetectorScenes> detectors, const BootstrapConfig& config,
    BootstrapMetric metric, const BootstrapOptions& options) {
  config.Validate();
  options.oc_params.Validate();
  options.map_params.Validate();
  if (detectors.empty()) throw ConfigError("no detectors to bootstrap");
  const std::size_t num_images = detectors.front().scenes.size();
  if (num_images == 0) throw ConfigError("cannot resample an empty dataset");
  for (const DetectorScenes& det : detectors) {
    bool same = det.scenes.size() == num_images;
    for (std::size_t i = 0; same && i < num_images; ++i) {
      same = det.scenes[i].image_id == detectors.front().scenes[i].image_id;
    }
    if (!same) {
      throw ValidationError("detector '" + det.name +
                            "' does not cover the same images as '" +
                            detectors.front().name + "'");
    }
  }

  std::vector<std::vector<std::size_t>> samples(config.trials);
  ParallelFor(config.trials, options.jobs, [&](std::size_t t) {
    samples[t] = DrawBootstrapSample(config, num_images, t);
  });

  std::vector<BootstrapReport> reports;
  for (const DetectorScenes& det : detectors) {
    BootstrapReport report;
    report.detector = det.name;
    report.metric = metric;
    report.config = config;
    report.per_trial.resize(config.trials);

    if (metric == BootstrapMetric::kOcCost) {
      const DatasetReport full = DatasetOcCost(
          det.scenes, options.oc_params, EvalOptions{false, options.jobs});
      std::vector<double> per_image;
      per_image.reserve(num_images);
      for (const ImageEvalResult& r : full.per_image) {
        per_image.push_back(r.oc_cost);
      }
      ParallelFor(config.trials, options.jobs, [&](std::size_t t) {
        CompensatedSum total;
        for (std::size_t idx : samples[t]) total.Add(per_image[idx]);
        report.per_trial[t] =
            total.Value() / static_cast<double>(samples[t].size());
      });
    } else {
      std::vector<ImageMatches> matches(num_images);
      ParallelFor(num_images, options.jobs, [&](std::size_t i) {
        matches[i] = MatchImage(det.scenes[i], options.map_params);
      });
      ParallelFor(config.trials, options.jobs, [&](std::size_t t) {
        report.per_trial[t] =
            PoolMap(matches, samples[t], options.map_params).map;
      });
    }
    report.stats = ComputeBootstrapStats(report.per_trial);
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace oceval
