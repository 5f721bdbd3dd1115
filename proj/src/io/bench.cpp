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

#include "rowcrop/io/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <thread>
#include <tuple>

#include "rowcrop/error.hpp"
#include "rowcrop/io/export.hpp"
#include "rowcrop/io/files.hpp"
#include "rowcrop/io/report.hpp"

namespace rowcrop::io {
namespace {

[[noreturn]] void Fail(const std::string& message) {
  throw Error(ErrorCode::kConfigError, "run config: " + message);
}

bool IsPreset(const std::string& name) {
  const auto& names = PresetNames();
  return std::find(names.begin(), names.end(), name) != names.end();
}

Disturbance DisturbanceFromJson(const Json& j, const CorruptionParams& base) {
  RequireKnownKeys(j, {"name", "start_lateral_offset", "start_yaw_offset", "corruption"},
                   "disturbance");
  Disturbance d;
  d.corruption = base;
  if (!j.contains("name") || !j["name"].is_string()) Fail("disturbance needs a name");
  d.name = j["name"].get<std::string>();
  for (const char c : d.name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
      Fail("disturbance names may use letters, digits, '_' and '-' only");
    }
  }
  if (d.name.empty()) Fail("disturbance name is empty");
  for (const char* key : {"start_lateral_offset", "start_yaw_offset"}) {
    if (j.contains(key)) {
      if (!j[key].is_number()) Fail(std::string(key) + " must be a number");
      (std::string_view(key) == "start_lateral_offset" ? d.start_lateral_offset
                                                       : d.start_yaw_offset) =
          j[key].get<double>();
    }
  }
  if (j.contains("corruption")) {
    d.corruption = CorruptionParamsFromJson(j["corruption"], base);
  }
  return d;
}

Json DisturbanceToJson(const Disturbance& d) {
  return {{"name", d.name},
          {"start_lateral_offset", d.start_lateral_offset},
          {"start_yaw_offset", d.start_yaw_offset},
          {"corruption", ToJson(d.corruption)}};
}

std::string CsvNumber(double v) {
  if (!std::isfinite(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

RunConfig RunConfigFromJson(const Json& j) {
  RequireKnownKeys(j, {"schema_version", "output_dir", "workers", "episode", "fields", "matrix"},
                   "run config");
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
      j["schema_version"].get<int>() != kSchemaVersion) {
    Fail("schema_version must be " + std::to_string(kSchemaVersion));
  }
  RunConfig cfg;
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) Fail("output_dir must be a string");
    cfg.output_dir = j["output_dir"].get<std::string>();
  }
  if (j.contains("workers")) {
    if (!j["workers"].is_number_integer() || j["workers"].get<int>() < 1) {
      Fail("workers must be a positive integer");
    }
    cfg.workers = j["workers"].get<int>();
  }
  if (j.contains("episode")) {
    const Json& e = j["episode"];
    if (e.is_object() && (e.contains("field") || e.contains("seed"))) {
      Fail("episode.field and episode.seed are set by the matrix");
    }
    cfg.episode = EpisodeConfigFromJson(e, cfg.episode);
  }
  if (j.contains("fields")) {
    const Json& fields = j["fields"];
    if (!fields.is_object()) Fail("fields must be an object");
    for (const auto& [name, value] : fields.items()) {
      FieldParams params = FieldParamsFromJson(value);
      if (params.crop_name.empty()) params.crop_name = name;
      Validate(params);
      cfg.fields[name] = params;
    }
  }
  if (!j.contains("matrix")) Fail("missing matrix");
  const Json& m = j["matrix"];
  RequireKnownKeys(m, {"crops", "seeds", "disturbances"}, "matrix");
  if (!m.contains("crops") || !m["crops"].is_array() || m["crops"].empty()) {
    Fail("matrix.crops must be a non-empty array");
  }
  std::set<std::string> crops;
  for (const Json& c : m["crops"]) {
    if (!c.is_string()) Fail("crop names must be strings");
    const std::string name = c.get<std::string>();
    if (!cfg.fields.contains(name) && !IsPreset(name)) {
      Fail("unknown crop '" + name + "' (not a preset and not defined in fields)");
    }
    if (!crops.insert(name).second) Fail("duplicate crop '" + name + "'");
    cfg.crops.push_back(name);
  }
  if (!m.contains("seeds") || !m["seeds"].is_array() || m["seeds"].empty()) {
    Fail("matrix.seeds must be a non-empty array");
  }
  std::set<std::uint64_t> seeds;
  for (const Json& s : m["seeds"]) {
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
      Fail("seeds must be non-negative integers");
    }
    if (!seeds.insert(s.get<std::uint64_t>()).second) Fail("duplicate seed");
    cfg.seeds.push_back(s.get<std::uint64_t>());
  }
  if (m.contains("disturbances")) {
    if (!m["disturbances"].is_array()) Fail("matrix.disturbances must be an array");
    std::set<std::string> names;
    for (const Json& d : m["disturbances"]) {
      cfg.disturbances.push_back(DisturbanceFromJson(d, cfg.episode.corruption));
      if (!names.insert(cfg.disturbances.back().name).second) {
        Fail("duplicate disturbance '" + cfg.disturbances.back().name + "'");
      }
    }
  }
  if (cfg.disturbances.empty()) {
    Disturbance nominal;
    nominal.start_lateral_offset = cfg.episode.start_lateral_offset;
    nominal.start_yaw_offset = cfg.episode.start_yaw_offset;
    nominal.corruption = cfg.episode.corruption;
    cfg.disturbances.push_back(nominal);
  }
  // Resolve every episode configuration up front so bad values fail early.
  for (const std::string& crop : cfg.crops) {
    EpisodeConfig e = cfg.episode;
    e.field = ResolveCrop(cfg, crop);
    for (const Disturbance& d : cfg.disturbances) {
      e.start_lateral_offset = d.start_lateral_offset;
      e.start_yaw_offset = d.start_yaw_offset;
      e.corruption = d.corruption;
      try {
        Validate(e);
      } catch (const Error& err) {
        Fail("crop '" + crop + "', disturbance '" + d.name + "': " + err.what());
      }
    }
  }
  return cfg;
}

Json ToJson(const RunConfig& cfg) {
  Json episode = ToJson(cfg.episode);
  episode.erase("field");
  episode.erase("seed");
  Json fields = Json::object();
  for (const auto& [name, params] : cfg.fields) fields[name] = ToJson(params);
  Json disturbances = Json::array();
  for (const Disturbance& d : cfg.disturbances) disturbances.push_back(DisturbanceToJson(d));
  return {{"schema_version", kSchemaVersion},
          {"output_dir", cfg.output_dir},
          {"workers", cfg.workers},
          {"episode", std::move(episode)},
          {"fields", std::move(fields)},
          {"matrix",
           {{"crops", cfg.crops}, {"seeds", cfg.seeds}, {"disturbances", disturbances}}}};
}

FieldParams ResolveCrop(const RunConfig& cfg, const std::string& crop) {
  if (const auto it = cfg.fields.find(crop); it != cfg.fields.end()) return it->second;
  return Preset(crop);
}

std::string EpisodeDirName(const SummaryRow& row) {
  return row.crop + "_seed" + std::to_string(row.seed) + "_" + row.disturbance;
}

BenchResult RunBench(const RunConfig& cfg) {
  struct Job {
    SummaryRow row;
    EpisodeConfig episode;
  };
  std::vector<Job> jobs;
  for (const std::string& crop : cfg.crops) {
    for (const std::uint64_t seed : cfg.seeds) {
      for (const Disturbance& d : cfg.disturbances) {
        Job job;
        job.row.crop = crop;
        job.row.seed = seed;
        job.row.disturbance = d.name;
        job.episode = cfg.episode;
        job.episode.field = ResolveCrop(cfg, crop);
        job.episode.seed = seed;
        job.episode.start_lateral_offset = d.start_lateral_offset;
        job.episode.start_yaw_offset = d.start_yaw_offset;
        job.episode.corruption = d.corruption;
        jobs.push_back(std::move(job));
      }
    }
  }
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
    return std::tie(a.row.crop, a.row.seed, a.row.disturbance) <
           std::tie(b.row.crop, b.row.seed, b.row.disturbance);
  });

  const std::filesystem::path root = cfg.output_dir;
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      Job& job = jobs[i];
      const auto start = std::chrono::steady_clock::now();
      try {
        const EpisodeReport report = RunEpisode(job.episode);
        const std::filesystem::path dir = root / "episodes" / EpisodeDirName(job.row);
        WriteFile(dir / "report.json", ReportJson(report));
        WriteFile(dir / "trajectory.csv", TrajectoryCsv(report));
        job.row.outcome = std::string(OutcomeName(report.outcome));
        job.row.metrics = report.metrics;
      } catch (const std::exception& e) {
        job.row.outcome = "Error";
        job.row.error = e.what();
      }
      job.row.wall_time =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  const int threads =
      std::max(1, std::min(cfg.workers, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  BenchResult result;
  for (Job& job : jobs) {
    result.errors += job.row.outcome == "Error";
    result.rows.push_back(std::move(job.row));
  }
  WriteFile(root / "summary.csv", SummaryCsv(result.rows));
  Json files = Json::array();
  for (const SummaryRow& row : result.rows) {
    if (row.outcome == "Error") continue;
    const std::filesystem::path dir = std::filesystem::path("episodes") / EpisodeDirName(row);
    files.push_back(FileEntry(root, dir / "report.json"));
    files.push_back(FileEntry(root, dir / "trajectory.csv"));
  }
  files.push_back(FileEntry(root, "summary.csv"));
  Json errors = Json::array();
  for (const SummaryRow& row : result.rows) {
    if (row.outcome == "Error") {
      errors.push_back({{"episode", EpisodeDirName(row)}, {"error", row.error}});
    }
  }
  const Json manifest = {{"schema_version", kSchemaVersion},
                         {"kind", "rowcrop.bench_manifest"},
                         {"config", ToJson(cfg)},
                         {"episodes", result.rows.size()},
                         {"errors", std::move(errors)},
                         {"files", std::move(files)}};
  WriteFile(root / "manifest.json", manifest.dump(2) + "\n");
  return result;
}

std::string SummaryCsv(const std::vector<SummaryRow>& rows) {
  std::string out =
      "crop,seed,disturbance,outcome,cha_rad,mae_m,mse_m2,omega_std_rad_s,wall_time_s\n";
  for (const SummaryRow& r : rows) {
    const bool ok = r.outcome != "Error";
    out += r.crop + "," + std::to_string(r.seed) + "," + r.disturbance + "," + r.outcome + ",";
    out += (ok ? CsvNumber(r.metrics.cha) : "") + ",";
    out += (ok ? CsvNumber(r.metrics.mae) : "") + ",";
    out += (ok ? CsvNumber(r.metrics.mse) : "") + ",";
    out += (ok ? CsvNumber(r.metrics.omega_std) : "") + ",";
    char wall[32];
    std::snprintf(wall, sizeof(wall), "%.3f", r.wall_time);
    out += std::string(wall) + "\n";
  }
  return out;
}

}  // namespace rowcrop::io
