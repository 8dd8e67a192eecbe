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

#include "oceval/cli.h"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "oceval/bootstrap.h"
#include "oceval/coco_io.h"
#include "oceval/errors.h"
#include "oceval/map_baseline.h"
#include "oceval/nms_tuner.h"
#include "oceval/occost.h"
#include "oceval/synthetic.h"

namespace oceval {

namespace {

constexpr char kEnvPrefix[] = "OCEVAL_";

std::string Trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

// Flat `key = value` file; '#' starts a comment line.
std::map<std::string, std::string> ReadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  std::map<std::string, std::string> values;
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    line = Trim(line);
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": expected key = value");
    }
    std::string key = Trim(line.substr(0, eq));
    std::string value = Trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    values[key] = value;
  }
  return values;
}

std::string EnvName(const std::string& long_name) {
  std::string env = kEnvPrefix;
  for (char c : long_name) {
    env += c == '-' ? '_' : static_cast<char>(std::toupper(
                                static_cast<unsigned char>(c)));
  }
  return env;
}

// Settings shared by several subcommands.
struct CommonFlags {
  std::string gt;
  std::string out;
  std::string format = "json";
  std::size_t jobs = 1;
  double lambda = OcCostParams::kDefaultLambda;
  double beta = OcCostParams::kDefaultBeta;
  bool lenient = false;
  bool include_crowd = false;
  std::string map_mode = "coco";
  std::size_t max_dets = 0;
  std::string config;
};

void AddGt(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--gt", f.gt, "COCO instances JSON (ground truth)")
      ->required();
}

void AddOutput(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--out", f.out, "Report file (stdout summary only if unset)");
  sub->add_option("--format", f.format, "Report format: json or csv")
      ->capture_default_str();
}

void AddJobs(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--jobs", f.jobs, "Worker threads")->capture_default_str();
}

void AddOcParams(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--lambda", f.lambda,
                  "Weight of the localization cost in [0, 1]")
      ->capture_default_str();
  sub->add_option("--beta", f.beta,
                  "Dummy transport cost in [0, 1]")
      ->capture_default_str();
}

void AddLoading(CLI::App* sub, CommonFlags& f) {
  sub->add_flag("--lenient,!--strict", f.lenient,
                "Skip invalid records with a warning instead of failing");
  sub->add_flag("--include-crowd", f.include_crowd,
                "Treat iscrowd annotations as ordinary ground truths");
}

void AddMapParams(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--map-mode", f.map_mode,
                  "IoU thresholds: coco (0.50:0.05:0.95) or voc (0.5)")
      ->capture_default_str();
  sub->add_option("--max-dets", f.max_dets,
                  "Per-image, per-category detection cap for mAP (0 = none)")
      ->capture_default_str();
}

OcCostParams ToOcParams(const CommonFlags& f) {
  OcCostParams p{f.lambda, f.beta};
  try {
    p.Validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  return p;
}

MapParams ToMapParams(const CommonFlags& f) {
  MapParams p;
  if (f.map_mode == "voc") {
    p = MapParams::Voc();
  } else if (f.map_mode != "coco") {
    throw UsageError("unknown --map-mode '" + f.map_mode +
                     "' (expected coco or voc)");
  }
  if (f.max_dets > 0) p.max_detections = f.max_dets;
  return p;
}

LoadOptions ToLoadOptions(const CommonFlags& f) {
  return LoadOptions{!f.lenient};
}

void PrintWarnings(const std::vector<std::string>& warnings,
                   std::ostream& err) {
  for (const std::string& w : warnings) err << "warning: " << w << "\n";
}

struct LoadedDataset {
  DatasetIndex index;
  std::vector<ImageScene> scenes;
};

LoadedDataset Load(const CommonFlags& f, const std::string& dt_path,
                   std::ostream& err) {
  LoadedDataset data;
  data.index = LoadGroundTruth(f.gt, ToLoadOptions(f));
  PrintWarnings(data.index.warnings, err);
  const DetectionSet dets =
      LoadDetections(dt_path, data.index, ToLoadOptions(f));
  PrintWarnings(dets.warnings, err);
  data.scenes = BuildScenes(data.index, dets, f.include_crowd);
  return data;
}

std::string Fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

template <typename Report>
void EmitReport(const Report& report, const CommonFlags& f) {
  const ReportFormat format = ParseReportFormat(f.format);
  if (!f.out.empty()) WriteReport(report, f.out, format);
}

// ---- evaluate ----

struct EvaluateFlags {
  std::string dt;
  bool with_map = false;
  bool breakdown = false;
};

void RunEvaluate(const CommonFlags& f, const EvaluateFlags& e,
                 std::ostream& out, std::ostream& err) {
  const OcCostParams params = ToOcParams(f);
  const MapParams map_params = ToMapParams(f);
  ParseReportFormat(f.format);
  const LoadedDataset data = Load(f, e.dt, err);
  if (data.scenes.empty()) {
    throw ValidationError("ground truth file " + f.gt + " has no images");
  }

  DatasetReport report =
      DatasetOcCost(data.scenes, params, EvalOptions{e.breakdown, f.jobs});
  if (e.with_map) {
    report.dataset_map = DatasetMap(data.scenes, map_params).map;
    for (std::size_t i = 0; i < data.scenes.size(); ++i) {
      const SingleImageMap single = SingleImageMapOf(data.scenes[i], map_params);
      report.per_image[i].single_image_map = single.value;
      report.per_image[i].single_image_map_vacuous = single.vacuous;
    }
  }

  out << "images: " << report.image_count << "\n";
  out << "lambda: " << params.lambda << "  beta: " << params.beta << "\n";
  out << "mean OC-cost: " << Fixed6(report.mean_oc_cost) << "\n";
  if (report.dataset_map) out << "mAP: " << Fixed6(*report.dataset_map) << "\n";
  EmitReport(report, f);
}

// ---- bootstrap ----

struct BootstrapFlags {
  std::vector<std::string> dt;
  std::size_t trials = 100;
  double fraction = 0.3;
  bool no_replacement = false;
  std::uint64_t seed = 0;
  std::string metric = "oc-cost";
};

// "name=path" or a bare path, which is named after its stem.
std::pair<std::string, std::string> SplitDetectorArg(const std::string& arg) {
  const std::size_t eq = arg.find('=');
  if (eq != std::string::npos) return {arg.substr(0, eq), arg.substr(eq + 1)};
  return {std::filesystem::path(arg).stem().string(), arg};
}

void RunBootstrapCmd(const CommonFlags& f, const BootstrapFlags& b,
                     std::ostream& out, std::ostream& err) {
  const OcCostParams params = ToOcParams(f);
  const MapParams map_params = ToMapParams(f);
  const BootstrapMetric metric = ParseBootstrapMetric(b.metric);
  ParseReportFormat(f.format);
  BootstrapConfig config{b.trials, b.fraction, !b.no_replacement, b.seed};
  try {
    config.Validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  if (b.dt.empty()) throw UsageError("bootstrap needs at least one --dt");

  const DatasetIndex index = LoadGroundTruth(f.gt, ToLoadOptions(f));
  PrintWarnings(index.warnings, err);
  if (index.images.empty()) {
    throw ValidationError("ground truth file " + f.gt + " has no images");
  }
  std::vector<DetectorScenes> detectors;
  for (const std::string& arg : b.dt) {
    const auto [name, path] = SplitDetectorArg(arg);
    const DetectionSet dets = LoadDetections(path, index, ToLoadOptions(f));
    PrintWarnings(dets.warnings, err);
    detectors.push_back({name, BuildScenes(index, dets, f.include_crowd)});
  }

  const std::vector<BootstrapReport> reports = RunBootstrap(
      detectors, config, metric, BootstrapOptions{params, map_params, f.jobs});

  out << "metric: " << ToString(metric) << "  trials: " << config.trials
      << "  fraction: " << config.sample_fraction
      << "  replacement: " << (config.with_replacement ? "yes" : "no")
      << "  seed: " << config.seed << "\n";
  out << "detector,mean,stddev,p5,p25,p50,p75,p95\n";
  for (const BootstrapReport& r : reports) {
    out << r.detector << "," << Fixed6(r.stats.mean) << ","
        << Fixed6(r.stats.stddev) << "," << Fixed6(r.stats.p5) << ","
        << Fixed6(r.stats.p25) << "," << Fixed6(r.stats.p50) << ","
        << Fixed6(r.stats.p75) << "," << Fixed6(r.stats.p95) << "\n";
  }
  EmitReport(reports, f);
}

// ---- sweep-lambda ----

struct SweepFlags {
  std::string dt;
  std::vector<double> lambdas = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5,
                                 0.6, 0.7, 0.8, 0.9, 1.0};
};

void RunSweep(const CommonFlags& f, const SweepFlags& s, std::ostream& out,
              std::ostream& err) {
  ToOcParams(f);
  if (s.lambdas.empty()) throw UsageError("--lambdas is empty");
  for (double l : s.lambdas) {
    if (!(l >= 0.0 && l <= 1.0)) {
      throw UsageError("lambda " + std::to_string(l) + " outside [0, 1]");
    }
  }
  ParseReportFormat(f.format);
  const LoadedDataset data = Load(f, s.dt, err);
  if (data.scenes.empty()) {
    throw ValidationError("ground truth file " + f.gt + " has no images");
  }
  const LambdaSweepTable table{
      f.beta, LambdaSweep(data.scenes, s.lambdas, f.beta, f.jobs)};
  out << ToCsv(table);
  EmitReport(table, f);
}

// ---- tune-nms ----

struct TuneFlags {
  std::string dt;
  std::string objective = "oc-cost";
  std::vector<double> score_thresholds;
  std::vector<double> iou_thresholds;
  std::string histogram_path;
};

void RunTune(const CommonFlags& f, const TuneFlags& t, std::ostream& out,
             std::ostream& err) {
  const OcCostParams params = ToOcParams(f);
  const MapParams map_params = ToMapParams(f);
  const TuneObjective objective = ParseTuneObjective(t.objective);
  ParseReportFormat(f.format);

  std::vector<NmsParams> grid;
  if (t.score_thresholds.empty() && t.iou_thresholds.empty()) {
    grid = DefaultNmsGrid();
  } else {
    std::vector<double> scores = t.score_thresholds;
    std::vector<double> ious = t.iou_thresholds;
    const std::vector<NmsParams> defaults = DefaultNmsGrid();
    if (scores.empty()) {
      for (const NmsParams& p : defaults) {
        if (std::find(scores.begin(), scores.end(), p.score_threshold) ==
            scores.end()) {
          scores.push_back(p.score_threshold);
        }
      }
    }
    if (ious.empty()) {
      for (const NmsParams& p : defaults) {
        if (std::find(ious.begin(), ious.end(), p.iou_threshold) ==
            ious.end()) {
          ious.push_back(p.iou_threshold);
        }
      }
    }
    grid = MakeNmsGrid(scores, ious);
  }
  try {
    for (const NmsParams& p : grid) p.Validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }

  const LoadedDataset data = Load(f, t.dt, err);
  if (data.scenes.empty()) {
    throw ValidationError("ground truth file " + f.gt + " has no images");
  }
  const TuneResult result = Tune(data.scenes, grid, objective,
                                 TuneOptions{params, map_params, f.jobs});

  out << "objective: " << ToString(objective) << "  grid points: "
      << grid.size() << "\n";
  out << "best score_threshold: " << result.best_params.score_threshold
      << "  iou_threshold: " << result.best_params.iou_threshold << "\n";
  out << "objective value: " << Fixed6(result.objective_value) << "\n";

  if (!t.histogram_path.empty()) {
    const std::vector<ImageScene> tuned =
        ApplyNms(data.scenes, result.best_params);
    WriteTextFile(t.histogram_path,
                  ToCsv(GroundTruthCountHistogram(data.scenes),
                        DetectionCountHistogram(data.scenes),
                        DetectionCountHistogram(tuned)));
  }
  EmitReport(result, f);
}

// ---- gen-fixture ----

struct FixtureFlags {
  std::string kind = "perturbed";
  SyntheticConfig config;
  std::string out_gt;
  std::string out_dt;
};

void RunGenFixture(FixtureFlags& x, std::ostream& out) {
  x.config.kind = ParseSceneKind(x.kind);
  try {
    x.config.Validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  const std::vector<ImageScene> scenes = GenerateScenes(x.config);
  WriteTextFile(x.out_gt, GroundTruthToCoco(scenes).dump() + "\n");
  WriteTextFile(x.out_dt, DetectionsToCoco(scenes).dump() + "\n");
  out << "wrote " << scenes.size() << " images to " << x.out_gt << " and "
      << x.out_dt << "\n";
}

// Applies `--config` values as option defaults and wires OCEVAL_* variables.
// Resulting precedence: flags > environment > config file > built-in
// defaults.
void ApplyConfigAndEnv(CLI::App* sub, const std::vector<std::string>& args) {
  std::optional<std::string> config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    }
  }

  for (CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "config" || name.empty()) continue;
    opt->envname(EnvName(name));
  }

  if (!config_path) return;
  for (const auto& [key, value] : ReadConfigFile(*config_path)) {
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config" || key == "help") {
      throw UsageError("unknown key '" + key + "' in config file " +
                       *config_path);
    }
    try {
      // Flags do not store their default unless asked to.
      opt->run_callback_for_default();
      opt->default_val(value);
    } catch (const CLI::Error& e) {
      throw UsageError("bad value for '" + key + "' in config file: " +
                       e.what());
    }
  }
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Optimal Correction Cost evaluation for object detection",
               "oceval"};
  app.require_subcommand(1);

  CommonFlags common;

  EvaluateFlags eval_flags;
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Dataset OC-cost (optionally mAP)");
  AddGt(evaluate, common);
  evaluate->add_option("--dt", eval_flags.dt, "COCO results JSON")->required();
  AddOcParams(evaluate, common);
  AddOutput(evaluate, common);
  AddJobs(evaluate, common);
  AddLoading(evaluate, common);
  AddMapParams(evaluate, common);
  evaluate->add_flag("--with-map", eval_flags.with_map,
                     "Also compute dataset and single-image mAP");
  evaluate->add_flag("--breakdown", eval_flags.breakdown,
                     "Include the per-pair assignment in the report");

  BootstrapFlags boot_flags;
  CLI::App* bootstrap = app.add_subcommand(
      "bootstrap", "Metric distribution over resampled image sets");
  AddGt(bootstrap, common);
  bootstrap
      ->add_option("--dt", boot_flags.dt,
                   "Detections per detector, as path or name=path")
      ->required()
      ->delimiter(',');
  bootstrap->add_option("--trials", boot_flags.trials)->capture_default_str();
  bootstrap->add_option("--fraction", boot_flags.fraction,
                        "Fraction of images drawn per trial")
      ->capture_default_str();
  bootstrap->add_flag("--no-replacement,!--with-replacement",
                      boot_flags.no_replacement, "Draw without replacement");
  bootstrap->add_option("--seed", boot_flags.seed)->capture_default_str();
  bootstrap->add_option("--metric", boot_flags.metric, "oc-cost or map")
      ->capture_default_str();
  AddOcParams(bootstrap, common);
  AddOutput(bootstrap, common);
  AddJobs(bootstrap, common);
  AddLoading(bootstrap, common);
  AddMapParams(bootstrap, common);

  SweepFlags sweep_flags;
  CLI::App* sweep =
      app.add_subcommand("sweep-lambda", "Mean OC-cost for several lambdas");
  AddGt(sweep, common);
  sweep->add_option("--dt", sweep_flags.dt, "COCO results JSON")->required();
  sweep->add_option("--lambdas", sweep_flags.lambdas, "Comma-separated list")
      ->delimiter(',');
  sweep->add_option("--beta", common.beta)->capture_default_str();
  AddOutput(sweep, common);
  AddJobs(sweep, common);
  AddLoading(sweep, common);

  TuneFlags tune_flags;
  CLI::App* tune =
      app.add_subcommand("tune-nms", "Grid search of NMS thresholds");
  AddGt(tune, common);
  tune->add_option("--dt", tune_flags.dt, "Raw (pre-NMS) COCO results JSON")
      ->required();
  tune->add_option("--objective", tune_flags.objective, "oc-cost or map")
      ->capture_default_str();
  tune->add_option("--score-thresholds", tune_flags.score_thresholds,
                   "Comma-separated list (default 0.05:0.05:0.9)")
      ->delimiter(',');
  tune->add_option("--iou-thresholds", tune_flags.iou_thresholds,
                   "Comma-separated list (default 0.3:0.1:0.9)")
      ->delimiter(',');
  tune->add_option("--emit-count-histogram", tune_flags.histogram_path,
                   "CSV of per-image object counts before/after tuning");
  AddOcParams(tune, common);
  AddOutput(tune, common);
  AddJobs(tune, common);
  AddLoading(tune, common);
  AddMapParams(tune, common);

  FixtureFlags fixture_flags;
  CLI::App* gen =
      app.add_subcommand("gen-fixture", "Write a synthetic COCO dataset");
  gen->add_option("--kind", fixture_flags.kind,
                  "perturbed, perfect, mislabeled or noisy")
      ->capture_default_str();
  gen->add_option("--images", fixture_flags.config.images)
      ->capture_default_str();
  gen->add_option("--gts-per-image", fixture_flags.config.gts_per_image)
      ->capture_default_str();
  gen->add_option("--dets-per-image", fixture_flags.config.dets_per_image)
      ->capture_default_str();
  gen->add_option("--noise-per-image", fixture_flags.config.noise_per_image)
      ->capture_default_str();
  gen->add_option("--categories", fixture_flags.config.categories)
      ->capture_default_str();
  gen->add_option("--seed", fixture_flags.config.seed)->capture_default_str();
  gen->add_option("--out-gt", fixture_flags.out_gt)->required();
  gen->add_option("--out-dt", fixture_flags.out_dt)->required();

  for (CLI::App* sub : {evaluate, bootstrap, sweep, tune, gen}) {
    sub->add_option("--config", common.config,
                    "Flat key = value file of option defaults");
  }

  try {
    if (!args.empty()) {
      for (CLI::App* sub : {evaluate, bootstrap, sweep, tune, gen}) {
        if (sub->get_name() == args.front()) ApplyConfigAndEnv(sub, args);
      }
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitUsage;
    }

    if (evaluate->parsed()) {
      RunEvaluate(common, eval_flags, out, err);
    } else if (bootstrap->parsed()) {
      RunBootstrapCmd(common, boot_flags, out, err);
    } else if (sweep->parsed()) {
      RunSweep(common, sweep_flags, out, err);
    } else if (tune->parsed()) {
      RunTune(common, tune_flags, out, err);
    } else if (gen->parsed()) {
      RunGenFixture(fixture_flags, out);
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InputError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace oceval
