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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rowcrop/io/json_io.hpp"
#include "rowcrop/sim.hpp"

namespace rowcrop::io {

struct Disturbance {
  std::string name = "nominal";
  double start_lateral_offset = 0.0;
  double start_yaw_offset = 0.0;
  CorruptionParams corruption;
};

struct RunConfig {
  std::string output_dir = "bench_out";
  int workers = 1;
  EpisodeConfig episode;                     // shared settings
  std::map<std::string, FieldParams> fields;  // inline crops
  std::vector<std::string> crops;
  std::vector<std::uint64_t> seeds;
  std::vector<Disturbance> disturbances;
};

// Strict reader. Every crop must be a preset or an inline field, checked here
// so a bad matrix fails before any episode runs.
RunConfig RunConfigFromJson(const Json& j);
Json ToJson(const RunConfig& cfg);

FieldParams ResolveCrop(const RunConfig& cfg, const std::string& crop);

struct SummaryRow {
  std::string crop;
  std::uint64_t seed = 0;
  std::string disturbance;
  std::string outcome;  // an Outcome name, or "Error"
  std::string error;
  MetricsRecord metrics;
  double wall_time = 0.0;
};

struct BenchResult {
  std::vector<SummaryRow> rows;  // sorted by crop, seed, disturbance
  int errors = 0;
};

// Episode directory name under <output_dir>/episodes.
std::string EpisodeDirName(const SummaryRow& row);

// Runs the crops x seeds x disturbances matrix on `workers` threads and
// writes per-episode report.json and trajectory.csv, summary.csv and
// manifest.json. Failed episodes are recorded as rows and do not stop the run.
BenchResult RunBench(const RunConfig& cfg);

std::string SummaryCsv(const std::vector<SummaryRow>& rows);

}  // namespace rowcrop::io
