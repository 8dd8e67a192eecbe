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

#include "oceval/coco_io.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "oceval/errors.h"

namespace oceval {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxListedProblems = 20;

std::string Child(const std::string& path, std::string_view key) {
  return path + "." + std::string(key);
}

std::string Child(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

const json& Field(const json& obj, std::string_view key,
                  const std::string& path) {
  if (!obj.is_object()) throw ParseError(path + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(Child(path, key) + ": missing required field");
  }
  return *it;
}

const json& ArrayField(const json& obj, std::string_view key,
                       const std::string& path) {
  const json& v = Field(obj, key, path);
  if (!v.is_array()) throw ParseError(Child(path, key) + ": expected an array");
  return v;
}

std::int64_t IntField(const json& obj, std::string_view key,
                      const std::string& path) {
  const json& v = Field(obj, key, path);
  if (!v.is_number_integer()) {
    throw ParseError(Child(path, key) + ": expected an integer");
  }
  return v.get<std::int64_t>();
}

std::int64_t OptionalIntField(const json& obj, std::string_view key,
                              const std::string& path, std::int64_t fallback) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  if (!it->is_number_integer()) {
    throw ParseError(Child(path, key) + ": expected an integer");
  }
  return it->get<std::int64_t>();
}

double NumberField(const json& obj, std::string_view key,
                   const std::string& path) {
  const json& v = Field(obj, key, path);
  if (!v.is_number()) throw ParseError(Child(path, key) + ": expected a number");
  return v.get<double>();
}

std::string StringField(const json& obj, std::string_view key,
                        const std::string& path) {
  const json& v = Field(obj, key, path);
  if (!v.is_string()) throw ParseError(Child(path, key) + ": expected a string");
  return v.get<std::string>();
}

struct Xywh {
  double x, y, w, h;
};

Xywh BboxField(const json& obj, const std::string& path) {
  const json& v = Field(obj, "bbox", path);
  const std::string where = Child(path, "bbox");
  if (!v.is_array() || v.size() != 4) {
    throw ParseError(where + ": expected [x, y, w, h]");
  }
  for (std::size_t k = 0; k < 4; ++k) {
    if (!v[k].is_number()) {
      throw ParseError(Child(where, k) + ": expected a number");
    }
  }
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>(),
          v[3].get<double>()};
}

// Collects per-record problems; strict mode throws them together at the end,
// lenient mode turns them into warnings.
class Problems {
 public:
  explicit Problems(bool strict) : strict_(strict) {}

  void Add(std::string message) { items_.push_back(std::move(message)); }

  void Finish(std::string_view what, std::vector<std::string>& warnings) {
    if (items_.empty()) return;
    if (!strict_) {
      for (std::string& item : items_) {
        warnings.push_back("skipped " + item);
      }
      return;
    }
    std::ostringstream msg;
    msg << items_.size() << " invalid record(s) in " << what << ":";
    for (std::size_t i = 0; i < items_.size() && i < kMaxListedProblems; ++i) {
      msg << "\n  " << items_[i];
    }
    if (items_.size() > kMaxListedProblems) {
      msg << "\n  ... and " << items_.size() - kMaxListedProblems << " more";
    }
    throw ValidationError(msg.str());
  }

 private:
  bool strict_;
  std::vector<std::string> items_;
};

std::optional<BoundingBox> TryBox(const Xywh& b) {
  if (!(b.w > 0.0) || !(b.h > 0.0)) return std::nullopt;
  try {
    return BoundingBox::FromXywh(b.x, b.y, b.w, b.h);
  } catch (const InputError&) {
    // Width or height vanished in x + w.
    return std::nullopt;
  }
}

std::string Describe(const std::string& path, const std::string& problem) {
  return path + ": " + problem;
}

std::string FormatG6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void CheckSchema(const json& doc, std::string_view kind) {
  if (!doc.is_object()) throw ParseError("$: expected a report object");
  const std::int64_t version = IntField(doc, "schema_version", "$");
  if (version != kReportSchemaVersion) {
    throw ParseError("$.schema_version: unsupported version " +
                     std::to_string(version));
  }
  const std::string actual = StringField(doc, "kind", "$");
  if (actual != kind) {
    throw ParseError("$.kind: expected '" + std::string(kind) + "', got '" +
                     actual + "'");
  }
}

std::optional<double> OptionalNumber(const json& obj, std::string_view key,
                                      const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw ParseError(Child(path, key) + ": expected a number");
  return it->get<double>();
}

std::optional<std::size_t> OptionalIndex(const json& obj, std::string_view key,
                                         const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_unsigned()) {
    throw ParseError(Child(path, key) + ": expected an index or null");
  }
  return it->get<std::size_t>();
}

json OptionalToJson(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json OptionalToJson(const std::optional<std::size_t>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

std::vector<GroundTruthInstance> DatasetIndex::GroundTruths(
    ImageId image_id, bool include_crowd) const {
  std::vector<GroundTruthInstance> out;
  const auto it = annotations.find(image_id);
  if (it == annotations.end()) return out;
  for (const AnnotationRecord& rec : it->second) {
    if (rec.is_crowd && !include_crowd) continue;
    out.push_back(rec.instance);
  }
  return out;
}

nlohmann::json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

DatasetIndex ParseGroundTruth(const nlohmann::json& doc,
                              const LoadOptions& options) {
  if (!doc.is_object()) throw ParseError("$: expected an object");
  DatasetIndex index;

  const json& images = ArrayField(doc, "images", "$");
  for (std::size_t i = 0; i < images.size(); ++i) {
    const std::string path = Child("$.images", i);
    ImageInfo info;
    info.id = IntField(images[i], "id", path);
    info.width = OptionalIntField(images[i], "width", path, 0);
    info.height = OptionalIntField(images[i], "height", path, 0);
    const auto name = images[i].find("file_name");
    if (name != images[i].end() && name->is_string()) {
      info.file_name = name->get<std::string>();
    }
    if (!index.images.emplace(info.id, info).second) {
      throw ValidationError(path + ": duplicate image id " +
                            std::to_string(info.id));
    }
    index.annotations[info.id];
  }

  const json& categories = ArrayField(doc, "categories", "$");
  for (std::size_t i = 0; i < categories.size(); ++i) {
    const std::string path = Child("$.categories", i);
    const CategoryId id = IntField(categories[i], "id", path);
    const std::string name = StringField(categories[i], "name", path);
    if (!index.categories.emplace(id, name).second) {
      throw ValidationError(path + ": duplicate category id " +
                            std::to_string(id));
    }
  }

  const json& annotations = ArrayField(doc, "annotations", "$");
  std::vector<std::string> dangling;
  Problems bad_boxes(options.strict);
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    const std::string path = Child("$.annotations", i);
    const json& a = annotations[i];
    const std::int64_t id =
        OptionalIntField(a, "id", path, static_cast<std::int64_t>(i));
    const ImageId image_id = IntField(a, "image_id", path);
    const CategoryId category = IntField(a, "category_id", path);
    const Xywh b = BboxField(a, path);
    const bool is_crowd = OptionalIntField(a, "iscrowd", path, 0) != 0;

    if (!index.images.contains(image_id)) {
      dangling.push_back(
          Describe(path, "unknown image_id " + std::to_string(image_id)));
      continue;
    }
    if (!index.categories.contains(category)) {
      dangling.push_back(
          Describe(path, "unknown category_id " + std::to_string(category)));
      continue;
    }
    const std::optional<BoundingBox> box = TryBox(b);
    if (!box) {
      bad_boxes.Add(Describe(path, "non-positive bbox size"));
      continue;
    }
    index.annotations[image_id].push_back(
        AnnotationRecord{id, image_id, {*box, category}, is_crowd});
  }
  if (!dangling.empty()) {
    Problems all(true);
    for (std::string& d : dangling) all.Add(std::move(d));
    all.Finish("ground truth (dangling references)", index.warnings);
  }
  bad_boxes.Finish("ground truth", index.warnings);
  return index;
}

DatasetIndex LoadGroundTruth(const std::filesystem::path& path,
                             const LoadOptions& options) {
  const json doc = ReadJsonFile(path);
  try {
    return ParseGroundTruth(doc, options);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

DetectionSet ParseDetections(const nlohmann::json& doc,
                             const DatasetIndex& index,
                             const LoadOptions& options) {
  if (!doc.is_array()) throw ParseError("$: expected an array of detections");
  DetectionSet set;
  for (const auto& [id, unused] : index.images) set.by_image[id];

  Problems problems(options.strict);
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string path = Child("$", i);
    const json& d = doc[i];
    const ImageId image_id = IntField(d, "image_id", path);
    const CategoryId category = IntField(d, "category_id", path);
    const Xywh b = BboxField(d, path);
    const double score = NumberField(d, "score", path);

    if (!index.images.contains(image_id)) {
      problems.Add(
          Describe(path, "unknown image_id " + std::to_string(image_id)));
      continue;
    }
    if (!index.categories.contains(category)) {
      problems.Add(
          Describe(path, "unknown category_id " + std::to_string(category)));
      continue;
    }
    if (!(score >= 0.0 && score <= 1.0)) {
      problems.Add(Describe(path, "score " + FormatG6(score) +
                                      " outside [0, 1]"));
      continue;
    }
    const std::optional<BoundingBox> box = TryBox(b);
    if (!box) {
      problems.Add(Describe(path, "non-positive bbox size"));
      continue;
    }
    set.by_image[image_id].emplace_back(*box, category, score);
  }
  problems.Finish("detections", set.warnings);
  return set;
}

DetectionSet LoadDetections(const std::filesystem::path& path,
                            const DatasetIndex& index,
                            const LoadOptions& options) {
  const json doc = ReadJsonFile(path);
  try {
    return ParseDetections(doc, index, options);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

std::vector<ImageScene> BuildScenes(const DatasetIndex& index,
                                    const DetectionSet& detections,
                                    bool include_crowd) {
  std::vector<ImageScene> scenes;
  scenes.reserve(index.images.size());
  for (const auto& [id, unused] : index.images) {
    ImageScene scene;
    scene.image_id = id;
    scene.ground_truths = index.GroundTruths(id, include_crowd);
    const auto it = detections.by_image.find(id);
    if (it != detections.by_image.end()) scene.detections = it->second;
    scenes.push_back(std::move(scene));
  }
  return scenes;
}

namespace {

json BoxToXywh(const BoundingBox& b) {
  return json::array({b.x1(), b.y1(), b.width(), b.height()});
}

}  // namespace

nlohmann::json GroundTruthToCoco(std::span<const ImageScene> scenes) {
  json images = json::array();
  json annotations = json::array();
  std::set<CategoryId> categories;
  std::int64_t next_id = 1;
  for (const ImageScene& s : scenes) {
    images.push_back({{"id", s.image_id},
                      {"width", 0},
                      {"height", 0},
                      {"file_name", std::to_string(s.image_id) + ".jpg"}});
    for (const GroundTruthInstance& g : s.ground_truths) {
      categories.insert(g.label);
      annotations.push_back({{"id", next_id++},
                             {"image_id", s.image_id},
                             {"category_id", g.label},
                             {"bbox", BoxToXywh(g.box)},
                             {"area", Area(g.box)},
                             {"iscrowd", 0}});
    }
    for (const Detection& d : s.detections) categories.insert(d.label);
  }
  json cats = json::array();
  for (CategoryId c : categories) {
    cats.push_back({{"id", c}, {"name", "category_" + std::to_string(c)}});
  }
  return {{"images", images}, {"annotations", annotations}, {"categories", cats}};
}

nlohmann::json DetectionsToCoco(std::span<const ImageScene> scenes) {
  json out = json::array();
  for (const ImageScene& s : scenes) {
    for (const Detection& d : s.detections) {
      out.push_back({{"image_id", s.image_id},
                     {"category_id", d.label},
                     {"bbox", BoxToXywh(d.box)},
                     {"score", d.score}});
    }
  }
  return out;
}

ReportFormat ParseReportFormat(std::string_view text) {
  if (text == "json") return ReportFormat::kJson;
  if (text == "csv") return ReportFormat::kCsv;
  throw UsageError("unknown report format '" + std::string(text) +
                   "' (expected json or csv)");
}

// ---- DatasetReport ----

namespace {

std::vector<const ImageEvalResult*> SortedByImageId(const DatasetReport& r) {
  std::vector<const ImageEvalResult*> rows;
  for (const ImageEvalResult& img : r.per_image) rows.push_back(&img);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ImageEvalResult* a, const ImageEvalResult* b) {
                     return a->image_id < b->image_id;
                   });
  return rows;
}

}  // namespace

nlohmann::json ToJson(const DatasetReport& report) {
  json per_image = json::array();
  for (const ImageEvalResult* img : SortedByImageId(report)) {
    json row = {{"image_id", img->image_id},
                {"oc_cost", img->oc_cost},
                {"matched_pairs", img->matched_pairs},
                {"num_detections", img->num_detections},
                {"num_ground_truths", img->num_ground_truths}};
    if (img->single_image_map) {
      row["single_image_map"] = *img->single_image_map;
      row["single_image_map_vacuous"] = img->single_image_map_vacuous;
    }
    if (img->breakdown) {
      json cells = json::array();
      for (const PairAssignment& p : *img->breakdown) {
        cells.push_back({{"detection", OptionalToJson(p.detection)},
                         {"ground_truth", OptionalToJson(p.ground_truth)},
                         {"unit_cost", p.unit_cost},
                         {"localization", OptionalToJson(p.localization)},
                         {"classification", OptionalToJson(p.classification)}});
      }
      row["breakdown"] = std::move(cells);
    }
    per_image.push_back(std::move(row));
  }
  return {{"schema_version", kReportSchemaVersion},
          {"kind", "dataset_report"},
          {"params", {{"lambda", report.params.lambda},
                      {"beta", report.params.beta}}},
          {"image_count", report.image_count},
          {"mean_oc_cost", report.mean_oc_cost},
          {"map", OptionalToJson(report.dataset_map)},
          {"per_image", std::move(per_image)}};
}

DatasetReport DatasetReportFromJson(const nlohmann::json& doc) {
  CheckSchema(doc, "dataset_report");
  DatasetReport report;
  const json& params = Field(doc, "params", "$");
  report.params.lambda = NumberField(params, "lambda", "$.params");
  report.params.beta = NumberField(params, "beta", "$.params");
  report.image_count =
      static_cast<std::size_t>(IntField(doc, "image_count", "$"));
  report.mean_oc_cost = NumberField(doc, "mean_oc_cost", "$");
  report.dataset_map = OptionalNumber(doc, "map", "$");
  const json& rows = ArrayField(doc, "per_image", "$");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string path = Child("$.per_image", i);
    const json& row = rows[i];
    ImageEvalResult img;
    img.image_id = IntField(row, "image_id", path);
    img.oc_cost = NumberField(row, "oc_cost", path);
    img.matched_pairs =
        static_cast<std::size_t>(IntField(row, "matched_pairs", path));
    img.num_detections =
        static_cast<std::size_t>(IntField(row, "num_detections", path));
    img.num_ground_truths =
        static_cast<std::size_t>(IntField(row, "num_ground_truths", path));
    img.single_image_map = OptionalNumber(row, "single_image_map", path);
    if (const auto it = row.find("single_image_map_vacuous");
        it != row.end() && it->is_boolean()) {
      img.single_image_map_vacuous = it->get<bool>();
    }
    if (const auto it = row.find("breakdown"); it != row.end()) {
      if (!it->is_array()) {
        throw ParseError(Child(path, "breakdown") + ": expected an array");
      }
      std::vector<PairAssignment> cells;
      for (std::size_t c = 0; c < it->size(); ++c) {
        const std::string cpath = Child(Child(path, "breakdown"), c);
        const json& cell = (*it)[c];
        PairAssignment p;
        p.detection = OptionalIndex(cell, "detection", cpath);
        p.ground_truth = OptionalIndex(cell, "ground_truth", cpath);
        p.unit_cost = NumberField(cell, "unit_cost", cpath);
        p.localization = OptionalNumber(cell, "localization", cpath);
        p.classification = OptionalNumber(cell, "classification", cpath);
        cells.push_back(p);
      }
      img.breakdown = std::move(cells);
    }
    report.per_image.push_back(std::move(img));
  }
  return report;
}

std::string ToCsv(const DatasetReport& report) {
  const bool with_map = std::any_of(
      report.per_image.begin(), report.per_image.end(),
      [](const ImageEvalResult& r) { return r.single_image_map.has_value(); });
  std::ostringstream out;
  out << "image_id,oc_cost,matched_pairs,num_detections,num_ground_truths";
  if (with_map) out << ",single_image_map,single_image_map_vacuous";
  out << "\n";
  for (const ImageEvalResult* img : SortedByImageId(report)) {
    out << img->image_id << "," << FormatG6(img->oc_cost) << ","
        << img->matched_pairs << "," << img->num_detections << ","
        << img->num_ground_truths;
    if (with_map) {
      out << ","
          << (img->single_image_map ? FormatG6(*img->single_image_map) : "")
          << "," << (img->single_image_map_vacuous ? 1 : 0);
    }
    out << "\n";
  }
  return out.str();
}

// ---- TuneResult ----

nlohmann::json ToJson(const TuneResult& result) {
  json grid = json::array();
  for (const auto& [p, value] : result.grid) {
    grid.push_back({{"score_threshold", p.score_threshold},
                    {"iou_threshold", p.iou_threshold},
                    {"value", value}});
  }
  return {{"schema_version", kReportSchemaVersion},
          {"kind", "nms_tune"},
          {"objective", std::string(ToString(result.objective_kind))},
          {"best", {{"score_threshold", result.best_params.score_threshold},
                    {"iou_threshold", result.best_params.iou_threshold}}},
          {"objective_value", result.objective_value},
          {"grid", std::move(grid)}};
}

TuneResult TuneResultFromJson(const nlohmann::json& doc) {
  CheckSchema(doc, "nms_tune");
  TuneResult result;
  try {
    result.objective_kind =
        ParseTuneObjective(StringField(doc, "objective", "$"));
  } catch (const UsageError& e) {
    throw ParseError(std::string("$.objective: ") + e.what());
  }
  const json& best = Field(doc, "best", "$");
  result.best_params = {NumberField(best, "score_threshold", "$.best"),
                        NumberField(best, "iou_threshold", "$.best")};
  result.objective_value = NumberField(doc, "objective_value", "$");
  const json& grid = ArrayField(doc, "grid", "$");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::string path = Child("$.grid", i);
    result.grid.emplace_back(
        NmsParams{NumberField(grid[i], "score_threshold", path),
                  NumberField(grid[i], "iou_threshold", path)},
        NumberField(grid[i], "value", path));
  }
  return result;
}

std::string ToCsv(const TuneResult& result) {
  std::ostringstream out;
  out << "score_threshold,iou_threshold," << ToString(result.objective_kind)
      << "\n";
  for (const auto& [p, value] : result.grid) {
    out << FormatG6(p.score_threshold) << "," << FormatG6(p.iou_threshold)
        << "," << FormatG6(value) << "\n";
  }
  return out.str();
}

// ---- Lambda sweep ----

nlohmann::json ToJson(const LambdaSweepTable& sweep) {
  json points = json::array();
  for (const LambdaSweepPoint& p : sweep.points) {
    points.push_back({{"lambda", p.lambda}, {"mean_oc_cost", p.mean_oc_cost}});
  }
  return {{"schema_version", kReportSchemaVersion},
          {"kind", "lambda_sweep"},
          {"beta", sweep.beta},
          {"points", std::move(points)}};
}

LambdaSweepTable LambdaSweepFromJson(const nlohmann::json& doc) {
  CheckSchema(doc, "lambda_sweep");
  LambdaSweepTable table;
  table.beta = NumberField(doc, "beta", "$");
  const json& points = ArrayField(doc, "points", "$");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string path = Child("$.points", i);
    table.points.push_back({NumberField(points[i], "lambda", path),
                            NumberField(points[i], "mean_oc_cost", path)});
  }
  return table;
}

std::string ToCsv(const LambdaSweepTable& sweep) {
  std::ostringstream out;
  out << "lambda,mean_oc_cost\n";
  for (const LambdaSweepPoint& p : sweep.points) {
    out << FormatG6(p.lambda) << "," << FormatG6(p.mean_oc_cost) << "\n";
  }
  return out.str();
}

// ---- Bootstrap ----

nlohmann::json ToJson(std::span<const BootstrapReport> reports) {
  json detectors = json::array();
  for (const BootstrapReport& r : reports) {
    detectors.push_back(
        {{"detector", r.detector},
         {"metric", std::string(ToString(r.metric))},
         {"config", {{"trials", r.config.trials},
                     {"sample_fraction", r.config.sample_fraction},
                     {"with_replacement", r.config.with_replacement},
                     {"seed", r.config.seed}}},
         {"per_trial", r.per_trial},
         {"mean", r.stats.mean},
         {"stddev", r.stats.stddev},
         {"percentiles", {{"p5", r.stats.p5},
                          {"p25", r.stats.p25},
                          {"p50", r.stats.p50},
                          {"p75", r.stats.p75},
                          {"p95", r.stats.p95}}}});
  }
  return {{"schema_version", kReportSchemaVersion},
          {"kind", "bootstrap"},
          {"detectors", std::move(detectors)}};
}

std::vector<BootstrapReport> BootstrapReportsFromJson(
    const nlohmann::json& doc) {
  CheckSchema(doc, "bootstrap");
  std::vector<BootstrapReport> reports;
  const json& detectors = ArrayField(doc, "detectors", "$");
  for (std::size_t i = 0; i < detectors.size(); ++i) {
    const std::string path = Child("$.detectors", i);
    const json& d = detectors[i];
    BootstrapReport r;
    r.detector = StringField(d, "detector", path);
    try {
      r.metric = ParseBootstrapMetric(StringField(d, "metric", path));
    } catch (const UsageError& e) {
      throw ParseError(Child(path, "metric") + ": " + e.what());
    }
    const std::string cpath = Child(path, "config");
    const json& config = Field(d, "config", path);
    r.config.trials = static_cast<std::size_t>(IntField(config, "trials", cpath));
    r.config.sample_fraction = NumberField(config, "sample_fraction", cpath);
    const json& repl = Field(config, "with_replacement", cpath);
    if (!repl.is_boolean()) {
      throw ParseError(Child(cpath, "with_replacement") + ": expected a boolean");
    }
    r.config.with_replacement = repl.get<bool>();
    const json& seed = Field(config, "seed", cpath);
    if (!seed.is_number_unsigned()) {
      throw ParseError(Child(cpath, "seed") + ": expected an unsigned integer");
    }
    r.config.seed = seed.get<std::uint64_t>();
    const json& trials = ArrayField(d, "per_trial", path);
    for (std::size_t t = 0; t < trials.size(); ++t) {
      if (!trials[t].is_number()) {
        throw ParseError(Child(Child(path, "per_trial"), t) +
                         ": expected a number");
      }
      r.per_trial.push_back(trials[t].get<double>());
    }
    r.stats.mean = NumberField(d, "mean", path);
    r.stats.stddev = NumberField(d, "stddev", path);
    const std::string ppath = Child(path, "percentiles");
    const json& p = Field(d, "percentiles", path);
    r.stats.p5 = NumberField(p, "p5", ppath);
    r.stats.p25 = NumberField(p, "p25", ppath);
    r.stats.p50 = NumberField(p, "p50", ppath);
    r.stats.p75 = NumberField(p, "p75", ppath);
    r.stats.p95 = NumberField(p, "p95", ppath);
    reports.push_back(std::move(r));
  }
  return reports;
}

std::string ToCsv(std::span<const BootstrapReport> reports) {
  std::ostringstream out;
  out << "detector,metric,trial,value\n";
  for (const BootstrapReport& r : reports) {
    for (std::size_t t = 0; t < r.per_trial.size(); ++t) {
      out << r.detector << "," << ToString(r.metric) << "," << t << ","
          << FormatG6(r.per_trial[t]) << "\n";
    }
  }
  return out.str();
}

std::string ToCsv(const CountHistogram& ground_truth,
                  const CountHistogram& raw_detections,
                  const CountHistogram& tuned_detections) {
  std::set<std::size_t> counts;
  for (const CountHistogram* h :
       {&ground_truth, &raw_detections, &tuned_detections}) {
    for (const auto& [count, unused] : *h) counts.insert(count);
  }
  auto lookup = [](const CountHistogram& h, std::size_t key) -> std::size_t {
    const auto it = h.find(key);
    return it == h.end() ? 0 : it->second;
  };
  std::ostringstream out;
  out << "count,ground_truth_images,raw_detection_images,"
         "tuned_detection_images\n";
  for (std::size_t c : counts) {
    out << c << "," << lookup(ground_truth, c) << ","
        << lookup(raw_detections, c) << "," << lookup(tuned_detections, c)
        << "\n";
  }
  return out.str();
}

}  // namespace oceval
