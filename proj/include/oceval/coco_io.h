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

// COCO ground-truth / detection ingestion and report serialization. The
// report formats are described in docs/formats.md.

#ifndef OCEVAL_COCO_IO_H_
#define OCEVAL_COCO_IO_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "oceval/bootstrap.h"
#include "oceval/matching_cost.h"
#include "oceval/nms_tuner.h"
#include "oceval/occost.h"

namespace oceval {

struct ImageInfo {
  ImageId id = 0;
  std::int64_t width = 0;
  std::int64_t height = 0;
  std::string file_name;
};

struct AnnotationRecord {
  std::int64_t id;
  ImageId image_id;
  GroundTruthInstance instance;
  bool is_crowd;
};

struct DatasetIndex {
  std::map<ImageId, ImageInfo> images;
  // Per image, in file order.
  std::map<ImageId, std::vector<AnnotationRecord>> annotations;
  std::map<CategoryId, std::string> categories;
  // Records skipped in lenient mode.
  std::vector<std::string> warnings;

  // Crowd annotations are left out unless include_crowd is set.
  std::vector<GroundTruthInstance> GroundTruths(ImageId image_id,
                                                bool include_crowd) const;
};

struct DetectionSet {
  // Every indexed image has an entry, possibly empty.
  std::map<ImageId, std::vector<Detection>> by_image;
  std::vector<std::string> warnings;
};

struct LoadOptions {
  // Strict mode rejects a file containing any invalid record; lenient mode
  // skips such records and records a warning.
  bool strict = true;
};

// Structural problems raise ParseError naming the JSON path; dangling ids and
// invalid boxes raise ValidationError listing every offending record.
DatasetIndex ParseGroundTruth(const nlohmann::json& doc,
                              const LoadOptions& options = {});
DatasetIndex LoadGroundTruth(const std::filesystem::path& path,
                             const LoadOptions& options = {});

DetectionSet ParseDetections(const nlohmann::json& doc,
                             const DatasetIndex& index,
                             const LoadOptions& options = {});
DetectionSet LoadDetections(const std::filesystem::path& path,
                            const DatasetIndex& index,
                            const LoadOptions& options = {});

// One scene per indexed image, in ascending image_id order.
std::vector<ImageScene> BuildScenes(const DatasetIndex& index,
                                    const DetectionSet& detections,
                                    bool include_crowd = false);

// Inverse of the loaders, used to materialize synthetic fixtures. Category
// ids are taken from the scenes; names are synthesized.
nlohmann::json GroundTruthToCoco(std::span<const ImageScene> scenes);
nlohmann::json DetectionsToCoco(std::span<const ImageScene> scenes);

nlohmann::json ReadJsonFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view text);

// ---- Reports ----

inline constexpr int kReportSchemaVersion = 1;

enum class ReportFormat { kJson, kCsv };

struct LambdaSweepTable {
  double beta = OcCostParams::kDefaultBeta;
  std::vector<LambdaSweepPoint> points;

  friend bool operator==(const LambdaSweepTable&,
                         const LambdaSweepTable&) = default;
};

// "json" or "csv"; UsageError otherwise.
ReportFormat ParseReportFormat(std::string_view text);

nlohmann::json ToJson(const DatasetReport& report);
nlohmann::json ToJson(const TuneResult& result);
nlohmann::json ToJson(const LambdaSweepTable& sweep);
nlohmann::json ToJson(std::span<const BootstrapReport> reports);

DatasetReport DatasetReportFromJson(const nlohmann::json& doc);
TuneResult TuneResultFromJson(const nlohmann::json& doc);
LambdaSweepTable LambdaSweepFromJson(const nlohmann::json& doc);
std::vector<BootstrapReport> BootstrapReportsFromJson(
    const nlohmann::json& doc);

// CSV renderings; numbers use 6 significant digits.
std::string ToCsv(const DatasetReport& report);
std::string ToCsv(const TuneResult& result);
std::string ToCsv(const LambdaSweepTable& sweep);
std::string ToCsv(std::span<const BootstrapReport> reports);
std::string ToCsv(const CountHistogram& ground_truth,
                  const CountHistogram& raw_detections,
                  const CountHistogram& tuned_detections);

// Renders in the requested format; JSON is pretty-printed with full double
// precision.
template <typename Report>
std::string FormatReport(const Report& report, ReportFormat format) {
  if (format == ReportFormat::kCsv) return ToCsv(report);
  return ToJson(report).dump(2) + "\n";
}

// Convenience wrapper: renders and writes to `path`, IoError on failure.
template <typename Report>
void WriteReport(const Report& report, const std::filesystem::path& path,
                 ReportFormat format) {
  WriteTextFile(path, FormatReport(report, format));
}

}  // namespace oceval

#endif  // OCEVAL_COCO_IO_H_
