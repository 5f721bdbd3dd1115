// Copyright 2026 The rowcrop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: field generation, exports, episodes and scoring.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rowcrop/controller.hpp"
#include "rowcrop/error.hpp"
#include "rowcrop/field.hpp"
#include "rowcrop/io/bench.hpp"
#include "rowcrop/io/export.hpp"
#include "rowcrop/io/files.hpp"
#include "rowcrop/io/json_io.hpp"
#include "rowcrop/io/png_io.hpp"
#include "rowcrop/io/report.hpp"
#include "rowcrop/metrics.hpp"
#include "rowcrop/sim.hpp"
#include "rowcrop/terrain.hpp"

namespace fs = std::filesystem;
using rowcrop::io::FormatDouble;
using rowcrop::io::Json;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitError = 2;

struct FieldArgs {
  std::string crop;
  std::string field_file;
  std::uint64_t seed = rowcrop::kDefaultSeed;
  bool flat = false;
};

void AddFieldOptions(CLI::App* cmd, FieldArgs& args) {
  cmd->add_option("--crop", args.crop, "Preset name");
  cmd->add_option("--field", args.field_file, "Field parameter JSON file");
  cmd->add_option("--seed", args.seed, "Master seed");
  cmd->add_flag("--flat", args.flat, "Zero the terrain irregularity and slope");
}

Json ParseJsonFile(const fs::path& path) {
  const std::string text = rowcrop::io::ReadFile(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw rowcrop::Error(rowcrop::ErrorCode::kConfigError, path.string() + ": " + e.what());
  }
}

rowcrop::FieldParams ResolveField(const FieldArgs& args) {
  rowcrop::FieldParams params;
  if (!args.field_file.empty()) {
    params = rowcrop::io::FieldParamsFromJson(
        ParseJsonFile(args.field_file),
        args.crop.empty() ? rowcrop::FieldParams{} : rowcrop::Preset(args.crop));
  } else if (!args.crop.empty()) {
    params = rowcrop::Preset(args.crop);
  } else {
    throw rowcrop::Error(rowcrop::ErrorCode::kConfigError, "give --crop or --field");
  }
  if (args.flat) {
    params.terrain.delta_h = 0.0;
    params.terrain.slope = 0.0;
  }
  rowcrop::Validate(params);
  return params;
}

void PrintPreset(const rowcrop::FieldParams& p) {
  const auto line = [](const char* key, const std::string& value) {
    std::printf("%-18s %s\n", key, value.c_str());
  };
  line("crop", p.crop_name);
  line("terrain_length", FormatDouble(p.terrain.length));
  line("terrain_width", FormatDouble(p.terrain.width));
  line("delta_h", FormatDouble(p.terrain.delta_h));
  line("plant_length", FormatDouble(p.plant.length));
  line("plant_width", FormatDouble(p.plant.width));
  line("plant_height", FormatDouble(p.plant.height));
  line("d_rr", FormatDouble(p.d_rr));
  line("d_RR", FormatDouble(p.d_RR));
  line("d_pp", FormatDouble(p.d_pp));
  line("rows", std::to_string(p.num_rows));
  line("rows_per_group", std::to_string(p.rows_per_group));
  line("row_length", FormatDouble(p.row_length));
  line("plant_shape", std::string(rowcrop::PlantShapeName(p.plant.shape)));
  if (p.plant.shape == rowcrop::PlantShape::kTrunkCrown) {
    line("trunk_radius", FormatDouble(p.plant.trunk_radius));
    line("trunk_height", FormatDouble(p.plant.trunk_height));
  }
  line("grid_resolution", FormatDouble(p.terrain.grid_resolution));
  line("slope", FormatDouble(p.terrain.slope));
  line("obstacle_density", FormatDouble(p.obstacle_density));
  line("plant_jitter", FormatDouble(p.plant_jitter));
  line("scale", FormatDouble(p.scale));
}

std::vector<fs::path> MaskFiles(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") {
      out.push_back(entry.path().filename());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Row-crop field generation, navigation episodes and benchmarks"};
  app.require_subcommand(1);

  // preset list | show
  auto* preset = app.add_subcommand("preset", "Inspect crop presets");
  preset->require_subcommand(1);
  preset->add_subcommand("list", "List preset names");
  auto* show = preset->add_subcommand("show", "Print one preset");
  std::string show_name;
  bool show_json = false;
  show->add_option("name", show_name, "Preset name")->required();
  show->add_flag("--json", show_json, "Print the full parameter document");

  // generate
  auto* generate = app.add_subcommand("generate", "Generate a field layout (world.json)");
  FieldArgs gen_args;
  std::string gen_out;
  AddFieldOptions(generate, gen_args);
  generate->add_option("--out", gen_out, "Output file (default stdout)");

  // export-world
  auto* export_world = app.add_subcommand("export-world", "Write OBJ meshes and world.json");
  FieldArgs world_args;
  std::string world_out;
  AddFieldOptions(export_world, world_args);
  export_world->add_option("--out", world_out, "Output directory")->required();

  // export-dataset
  auto* export_dataset =
      app.add_subcommand("export-dataset", "Render ground-truth masks over a camera sweep");
  FieldArgs data_args;
  std::string data_out;
  std::string poses_file;
  int count = 10;
  std::uint64_t sweep_seed = rowcrop::kDefaultSeed;
  AddFieldOptions(export_dataset, data_args);
  export_dataset->add_option("--out", data_out, "Output directory")->required();
  export_dataset->add_option("--count", count, "Number of random poses");
  export_dataset->add_option("--sweep-seed", sweep_seed, "Seed of the random sweep");
  export_dataset->add_option("--poses", poses_file, "JSON array of camera models to use");

  // run
  auto* run = app.add_subcommand("run", "Run one navigation episode");
  FieldArgs run_args;
  std::string run_config;
  std::string run_out;
  std::optional<double> lateral;
  std::optional<double> yaw;
  std::optional<int> corridor;
  AddFieldOptions(run, run_args);
  run->add_option("--config", run_config, "Episode JSON file");
  run->add_option("--lateral-offset", lateral, "Start offset to the left, meters");
  run->add_option("--yaw-offset", yaw, "Start heading offset, radians");
  run->add_option("--corridor", corridor, "Corridor index");
  run->add_option("--out", run_out, "Directory for report.json and trajectory.csv");

  // bench
  auto* bench = app.add_subcommand("bench", "Run an episode matrix");
  std::string bench_config;
  std::optional<int> workers;
  std::string bench_out;
  bench->add_option("config", bench_config, "Run configuration JSON")->required();
  bench->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_out, "Output directory (overrides the config)");

  // score
  auto* score = app.add_subcommand("score", "Compare two directories of PNG masks");
  std::string pred_dir;
  std::string truth_dir;
  score->add_option("pred", pred_dir, "Predicted masks")->required();
  score->add_option("truth", truth_dir, "Ground-truth masks")->required();

  // ctl-eval
  auto* ctl = app.add_subcommand("ctl-eval", "Evaluate the controller on one mask");
  std::string mask_file;
  rowcrop::ControllerConfig ctl_cfg;
  ctl->add_option("mask", mask_file, "Mask PNG")->required();
  ctl->add_option("--free-threshold", ctl_cfg.free_threshold_frac,
                  "Free column threshold as a fraction of the height");

  CLI11_PARSE(app, argc, argv);

  try {
    if (preset->parsed()) {
      if (show->parsed()) {
        const rowcrop::FieldParams p = rowcrop::Preset(show_name);
        if (show_json) {
          std::cout << rowcrop::io::ToJson(p).dump(2) << "\n";
        } else {
          PrintPreset(p);
        }
      } else {
        for (const std::string& name : rowcrop::PresetNames()) std::cout << name << "\n";
      }
      return 0;
    }

    if (generate->parsed()) {
      const rowcrop::FieldLayout layout =
          rowcrop::GenerateWorld(ResolveField(gen_args), gen_args.seed).layout;
      const std::string text = rowcrop::io::LayoutToJson(layout).dump(2) + "\n";
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        rowcrop::io::WriteFile(gen_out, text);
      }
      return 0;
    }

    if (export_world->parsed()) {
      const rowcrop::FieldParams params = ResolveField(world_args);
      const rowcrop::World world = rowcrop::GenerateWorld(params, world_args.seed);
      const rowcrop::FieldLayout& layout = world.layout;
      const rowcrop::Heightfield& hf = world.terrain;
      const Json manifest = rowcrop::io::ExportWorld(layout, hf, world_out);
      std::cout << manifest.dump(2) << "\n";
      return 0;
    }

    if (export_dataset->parsed()) {
      const rowcrop::FieldParams params = ResolveField(data_args);
      const rowcrop::World world = rowcrop::GenerateWorld(params, data_args.seed);
      const rowcrop::FieldLayout& layout = world.layout;
      const rowcrop::Heightfield& hf = world.terrain;
      std::vector<rowcrop::CameraModel> sweep;
      if (!poses_file.empty()) {
        const Json poses = ParseJsonFile(poses_file);
        if (!poses.is_array()) {
          throw rowcrop::Error(rowcrop::ErrorCode::kConfigError,
                               "poses file must hold an array of camera models");
        }
        for (const Json& p : poses) sweep.push_back(rowcrop::io::CameraModelFromJson(p));
      } else {
        sweep = rowcrop::io::MakeCameraSweep(layout, hf, rowcrop::CameraModel{}, count,
                                             sweep_seed);
      }
      const Json manifest = rowcrop::io::ExportDataset(layout, hf, sweep, data_out);
      std::cout << "wrote " << manifest["count"].get<std::size_t>() << " masks to "
                << data_out << "\n";
      return 0;
    }

    if (run->parsed()) {
      rowcrop::EpisodeConfig cfg;
      if (!run_config.empty()) {
        cfg = rowcrop::io::EpisodeConfigFromJson(ParseJsonFile(run_config));
      }
      if (!run_args.crop.empty() || !run_args.field_file.empty()) {
        cfg.field = ResolveField(run_args);
      } else if (run_config.empty()) {
        throw rowcrop::Error(rowcrop::ErrorCode::kConfigError,
                             "give --config, --crop or --field");
      } else if (run_args.flat) {
        cfg.field.terrain.delta_h = 0.0;
        cfg.field.terrain.slope = 0.0;
      }
      if (run->count("--seed") > 0) cfg.seed = run_args.seed;
      if (lateral) cfg.start_lateral_offset = *lateral;
      if (yaw) cfg.start_yaw_offset = *yaw;
      if (corridor) cfg.corridor_index = *corridor;
      const rowcrop::EpisodeReport report = rowcrop::RunEpisode(cfg);
      if (!run_out.empty()) {
        rowcrop::io::WriteFile(fs::path(run_out) / "report.json",
                               rowcrop::io::ReportJson(report));
        rowcrop::io::WriteFile(fs::path(run_out) / "trajectory.csv",
                               rowcrop::io::TrajectoryCsv(report));
      }
      const rowcrop::MetricsRecord& m = report.metrics;
      std::printf("outcome=%s cha=%s mae=%s mse=%s omega_std=%s final_e_ct=%s\n",
                  std::string(rowcrop::OutcomeName(report.outcome)).c_str(),
                  FormatDouble(m.cha).c_str(), FormatDouble(m.mae).c_str(),
                  FormatDouble(m.mse).c_str(), FormatDouble(m.omega_std).c_str(),
                  FormatDouble(report.final_cross_track).c_str());
      if (!report.detail.empty()) std::printf("detail: %s\n", report.detail.c_str());
      return 0;
    }

    if (bench->parsed()) {
      rowcrop::io::RunConfig cfg = rowcrop::io::RunConfigFromJson(ParseJsonFile(bench_config));
      if (workers) cfg.workers = *workers;
      if (!bench_out.empty()) cfg.output_dir = bench_out;
      const rowcrop::io::BenchResult result = rowcrop::io::RunBench(cfg);
      std::cout << rowcrop::io::SummaryCsv(result.rows);
      if (result.errors > 0) {
        std::fprintf(stderr, "%d episode(s) failed; see %s/manifest.json\n", result.errors,
                     cfg.output_dir.c_str());
        return kExitFailure;
      }
      return 0;
    }

    if (score->parsed()) {
      const std::vector<fs::path> names = MaskFiles(truth_dir);
      if (names.empty()) {
        throw rowcrop::Error(rowcrop::ErrorCode::kEmptyBatch,
                             "no PNG masks in " + truth_dir);
      }
      std::vector<rowcrop::Mask> pred;
      std::vector<rowcrop::Mask> truth;
      double iou_sum = 0.0;
      double acc_sum = 0.0;
      for (const fs::path& name : names) {
        truth.push_back(rowcrop::io::ReadMaskPng(fs::path(truth_dir) / name));
        pred.push_back(rowcrop::io::ReadMaskPng(fs::path(pred_dir) / name));
        iou_sum += rowcrop::Iou(pred.back(), truth.back());
        acc_sum += rowcrop::PixelAccuracy(pred.back(), truth.back());
      }
      const double n = static_cast<double>(names.size());
      const Json out = {{"count", names.size()},
                        {"mean_iou", iou_sum / n},
                        {"seg_loss", rowcrop::SegLoss(pred, truth)},
                        {"pixel_accuracy", acc_sum / n}};
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (ctl->parsed()) {
      rowcrop::Validate(ctl_cfg);
      const rowcrop::Mask mask = rowcrop::io::ReadMaskPng(mask_file);
      const std::vector<int> hist = rowcrop::ColumnHistogram(mask);
      const int threshold =
          static_cast<int>(std::floor(ctl_cfg.free_threshold_frac * mask.height()));
      const auto run_cols = rowcrop::FindFreeCluster(hist, threshold);
      Json out = {{"width", mask.width()}, {"height", mask.height()}, {"threshold", threshold}};
      if (!run_cols) {
        out["no_free_passage"] = true;
      } else {
        const double d_hat = rowcrop::NormalizedOffset(*run_cols, mask.width());
        const rowcrop::Command cmd = rowcrop::CommandForOffset(d_hat, ctl_cfg);
        out["no_free_passage"] = false;
        out["cluster"] = {{"start", run_cols->start}, {"end", run_cols->end}};
        out["offset"] = d_hat;
        out["v_x"] = cmd.v_x;
        out["omega_z"] = cmd.omega_z;
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }
  } catch (const rowcrop::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return 0;
}
