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

// Acceptance suite. Prints one PASS/FAIL line per criterion; with
// --criterion N only that criterion runs. Exit status is nonzero when any
// selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rowcrop/controller.hpp"
#include "rowcrop/field.hpp"
#include "rowcrop/io/bench.hpp"
#include "rowcrop/io/export.hpp"
#include "rowcrop/io/files.hpp"
#include "rowcrop/io/json_io.hpp"
#include "rowcrop/io/obj_io.hpp"
#include "rowcrop/metrics.hpp"
#include "rowcrop/rng.hpp"
#include "rowcrop/sim.hpp"
#include "rowcrop/terrain.hpp"

namespace fs = std::filesystem;

namespace rowcrop {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Result {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

std::string g_cli_path;

fs::path ScratchDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("rowcrop_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// 1. Preset fidelity through the command-line surface.
Result PresetFidelity() {
  // Terrain length, width, irregularity; plant length, width, height;
  // row spacing in and between groups; plant spacing; number of rows.
  const std::map<std::string, std::vector<double>> table = {
      {"zucchini", {60, 38, 0.2, 0.82, 0.9, 0.6, 1.8, 3.6, 0.7, 7}},
      {"lettuce", {60, 25, 0.25, 0.38, 0.34, 0.22, 0.7, 1.4, 0.4, 3}},
      {"chard", {60, 12, 0.25, 0.25, 0.4, 0.25, 0.7, 1.4, 0.3, 3}},
      {"pear", {80, 45, 0.3, 1.4, 2.2, 3.2, 5, 5, 2.2, 1}},
  };
  const std::vector<std::string> keys = {"terrain_length", "terrain_width", "delta_h",
                                         "plant_length",   "plant_width",   "plant_height",
                                         "d_rr",           "d_RR",          "d_pp",
                                         "rows"};
  int matched = 0;
  double worst_time = 0.0;
  std::string mismatch;
  for (const auto& [crop, values] : table) {
    const auto start = Clock::now();
    const std::string cmd = "\"" + g_cli_path + "\" preset show " + crop;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return {false, "cannot run " + g_cli_path};
    std::map<std::string, std::string> fields;
    char line[256];
    while (std::fgets(line, sizeof(line), pipe) != nullptr) {
      char key[64], value[128];
      if (std::sscanf(line, "%63s %127s", key, value) == 2) fields[key] = value;
    }
    const int status = pclose(pipe);
    worst_time = std::max(worst_time, Seconds(start));
    if (status != 0) return {false, "preset show " + crop + " exited with " + std::to_string(status)};
    for (std::size_t k = 0; k < keys.size(); ++k) {
      const auto it = fields.find(keys[k]);
      if (it != fields.end() && std::stod(it->second) == values[k]) {
        ++matched;
      } else if (mismatch.empty()) {
        mismatch = crop + "." + keys[k];
      }
    }
  }
  const bool pass = matched == 40 && worst_time < 1.0;
  return {pass, Fmt("%d/40 values exact, slowest call %.3f s%s", matched, worst_time,
                    mismatch.empty() ? "" : (", first mismatch " + mismatch).c_str())};
}

// 2. Control law against direct evaluation, plus exact mirror symmetry.
Result ControlLawAlgebra() {
  const ControllerConfig cfg;
  Rng rng(kDefaultSeed);
  double worst = 0.0;
  int mirror_checked = 0;
  int mirror_failed = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int w = 2 + static_cast<int>(rng.UniformIndex(1279));
    const int h = 1 + static_cast<int>(rng.UniformIndex(48));
    const int start = static_cast<int>(rng.UniformIndex(w));
    const int end = start + static_cast<int>(rng.UniformIndex(w - start));
    Mask mask(w, h, 1);
    for (int y = 0; y < h; ++y) {
      for (int x = start; x <= end; ++x) mask.set(x, y, 0);
    }
    const auto cmd = ControlCommand(mask, cfg);
    if (!cmd) return {false, Fmt("no cluster found for w=%d run=[%d,%d]", w, start, end)};
    const double d = ((start + end + 1) / 2.0 - w / 2.0) / (w / 2.0);
    const double omega = std::clamp(-3.0 * d, -1.0, 1.0);
    const double v = std::clamp(1.0 * (1.0 - d * d), 0.0, 0.5);
    worst = std::max({worst, std::abs(cmd->omega_z - omega), std::abs(cmd->v_x - v)});
    if (w % 2 == 0) {
      ++mirror_checked;
      const auto m = ControlCommand(MirrorColumns(mask), cfg);
      if (!m || m->omega_z != -cmd->omega_z || m->v_x != cmd->v_x) ++mirror_failed;
    }
  }
  return {worst <= 1e-9 && mirror_failed == 0,
          Fmt("max deviation %.3g over 1000 cases, mirror exact on %d/%d even widths",
              worst, mirror_checked - mirror_failed, mirror_checked)};
}

EpisodeConfig ZucchiniEpisode() {
  EpisodeConfig cfg;
  cfg.field = Preset("zucchini");
  return cfg;
}

// 3. Centered regulation on flat ground.
Result CenteredRegulation() {
  EpisodeConfig cfg = ZucchiniEpisode();
  cfg.field.terrain.delta_h = 0.0;
  const EpisodeReport r = RunEpisode(cfg);
  const bool pass = r.outcome == Outcome::kGoalReached && r.metrics.mae < 0.05 &&
                    std::abs(r.metrics.cha) < 0.02;
  return {pass, Fmt("outcome %s, MAE %.4f m, CHA %.5f rad",
                    std::string(OutcomeName(r.outcome)).c_str(), r.metrics.mae,
                    r.metrics.cha)};
}

// 4. Recovery from a 0.3 m lateral start offset.
Result DisturbanceRecovery() {
  EpisodeConfig cfg = ZucchiniEpisode();
  cfg.start_lateral_offset = 0.3;
  const EpisodeReport r = RunEpisode(cfg);
  const std::size_t n = r.trajectory.size();
  const std::size_t q = std::max<std::size_t>(1, n / 4);
  double first = 0.0, last = 0.0;
  for (std::size_t i = 0; i < q && i < n; ++i) {
    first += std::abs(CrossTrackError({r.trajectory[i].x, r.trajectory[i].y}, r.centerline));
    last += std::abs(CrossTrackError({r.trajectory[n - 1 - i].x, r.trajectory[n - 1 - i].y},
                                     r.centerline));
  }
  first /= static_cast<double>(q);
  last /= static_cast<double>(q);
  const bool pass = r.outcome == Outcome::kGoalReached &&
                    std::abs(r.final_cross_track) < 0.1 && n >= 4 && last < first;
  return {pass, Fmt("outcome %s, error at goal %.4f m, first-quarter mean %.4f m, "
                    "last-quarter mean %.4f m",
                    std::string(OutcomeName(r.outcome)).c_str(), r.final_cross_track, first,
                    last)};
}

// 5. Ten seeds per preset on rough terrain with drift.
Result FullMatrix() {
  bool pass = true;
  std::string detail;
  for (const std::string& crop : PresetNames()) {
    int reached = 0;
    int within = 0;
    double worst_mae = 0.0;
    std::map<std::string, int> outcomes;
    const FieldParams params = Preset(crop);
    const double limit = params.d_rr / 4.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      EpisodeConfig cfg;
      cfg.field = params;
      cfg.seed = seed;
      const EpisodeReport r = RunEpisode(cfg);
      ++outcomes[std::string(OutcomeName(r.outcome))];
      if (r.outcome != Outcome::kGoalReached) continue;
      ++reached;
      worst_mae = std::max(worst_mae, r.metrics.mae);
      within += r.metrics.mae < limit;
    }
    const bool ok = reached >= 9 && within == reached;
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += Fmt("%s %d/10 reached, MAE max %.3f (limit %.3f)", crop.c_str(), reached,
                  worst_mae, limit);
    if (!ok) {
      detail += " FAIL [";
      for (const auto& [name, count] : outcomes) detail += Fmt(" %s=%d", name.c_str(), count);
      detail += " ]";
    }
  }
  return {pass, detail};
}

// 6. Segmentation and trajectory metric identities.
Result MetricIdentities() {
  Rng rng(kDefaultSeed);
  double worst = 0.0;
  int failures = 0;
  const auto random_mask = [&](int w, int h, double p) {
    Mask m(w, h);
    for (auto& px : m.pixels()) px = rng.Uniform() < p;
    return m;
  };
  std::vector<Mask> pred, truth;
  double iou_sum = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int w = 1 + static_cast<int>(rng.UniformIndex(40));
    const int h = 1 + static_cast<int>(rng.UniformIndex(30));
    const Mask a = random_mask(w, h, rng.Uniform());
    const Mask b = random_mask(w, h, rng.Uniform());
    const double ab = Iou(a, b);
    worst = std::max(worst, std::abs(ab - Iou(b, a)));
    worst = std::max(worst, std::abs(PixelAccuracy(a, b) - PixelAccuracy(b, a)));
    failures += ab < 0.0 || ab > 1.0;
    failures += Iou(a, a) != 1.0 || PixelAccuracy(a, a) != 1.0;
    Mask disjoint(w, h);
    for (std::size_t i = 0; i < a.size(); ++i) disjoint.pixels()[i] = 1 - a.pixels()[i];
    if (a.CountOnes() > 0 && disjoint.CountOnes() > 0) failures += Iou(a, disjoint) != 0.0;
    failures += PixelAccuracy(a, disjoint) != 0.0;
    pred.push_back(a);
    truth.push_back(b);
    iou_sum += ab;
  }
  worst = std::max(worst, std::abs(SegLoss(pred, truth) - (1.0 - iou_sum / pred.size())));
  failures += SegLoss(truth, truth) != 0.0;

  const Segment line{{0, 0}, {20, 0}};
  int jensen_failures = 0;
  double cha_worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.UniformIndex(80));
    std::vector<PoseSample> traj, mirror;
    std::vector<Command> cmds;
    for (int i = 0; i < n; ++i) {
      const PoseSample p{0.1 * i, rng.Uniform(0, 19), rng.Normal(0, 0.3), rng.Normal(0, 0.2)};
      traj.push_back(p);
      mirror.push_back({p.t, p.x, -p.y, -p.yaw});
      cmds.push_back({rng.Uniform(0, 0.5), rng.Uniform(-1, 1)});
    }
    const MetricsRecord m = TrajectoryMetrics(traj, cmds, line, {20, 0.1});
    jensen_failures += m.mse < m.mae * m.mae;
    const double a = Cha(traj, {20, 0.1}).value;
    const double b = Cha(mirror, {20, -0.1}).value;
    cha_worst = std::max(cha_worst, std::abs(a + b));
  }
  const bool pass = worst <= 1e-12 && failures == 0 && jensen_failures == 0 && cha_worst <= 1e-12;
  return {pass, Fmt("mask identities: max asymmetry %.3g, %d violations; mse < mae^2 in "
                    "%d/1000 trajectories; CHA mirror residual %.3g",
                    worst, failures, jensen_failures, cha_worst)};
}

// 7. Heightfield bounds and gradient accuracy.
Result TerrainProperties() {
  double worst_excess = -1e9;
  double worst_grad = 0.0;
  int fields = 0;
  for (const std::string& crop : PresetNames()) {
    const TerrainSpec spec = EffectiveTerrain(Preset(crop));
    const double res = spec.grid_resolution;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Heightfield hf = GenerateHeightfield(spec, seed);
      ++fields;
      double lo = 1e9, hi = -1e9;
      for (int j = 0; j < hf.ny(); ++j) {
        for (int i = 0; i < hf.nx(); ++i) {
          const double u = hf.vertex(i, j) - spec.slope * i * res;
          lo = std::min(lo, u);
          hi = std::max(hi, u);
        }
      }
      worst_excess = std::max(worst_excess, (hi - lo) - spec.delta_h);
      Rng rng(seed);
      const double h = 1e-4;
      for (int k = 0; k < 1000;) {
        const double x = rng.Uniform(0, hf.x_extent());
        const double y = rng.Uniform(0, hf.y_extent());
        const double fx = x - std::floor(x / res) * res;
        const double fy = y - std::floor(y / res) * res;
        if (fx <= h || fx >= res - h || fy <= h || fy >= res - h) continue;
        const Vec2 g = hf.GradientAt(x, y);
        const double dx = (hf.HeightAt(x + h, y) - hf.HeightAt(x - h, y)) / (2 * h);
        const double dy = (hf.HeightAt(x, y + h) - hf.HeightAt(x, y - h)) / (2 * h);
        worst_grad = std::max({worst_grad, std::abs(g.x - dx), std::abs(g.y - dy)});
        ++k;
      }
    }
  }
  return {worst_excess <= 0.0 && worst_grad < 1e-5,
          Fmt("%d heightfields, peak-to-peak minus bound at most %.3g m, worst gradient "
              "error %.3g",
              fields, worst_excess, worst_grad)};
}

io::RunConfig StandardMatrix(const fs::path& out, int workers) {
  io::RunConfig cfg;
  cfg.output_dir = out.string();
  cfg.workers = workers;
  cfg.crops = PresetNames();
  cfg.seeds = {1, 2, 3};
  cfg.disturbances = {io::Disturbance{}};
  return cfg;
}

std::string WithoutLastColumn(const std::string& csv) {
  std::string out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t end = csv.find('\n', pos);
    if (end == std::string::npos) end = csv.size();
    const std::string line = csv.substr(pos, end - pos);
    out += line.substr(0, line.rfind(',')) + "\n";
    pos = end + 1;
  }
  return out;
}

// 8. Two identical matrix runs agree byte for byte.
Result Determinism() {
  const fs::path a = ScratchDir("determinism_a");
  const fs::path b = ScratchDir("determinism_b");
  const io::BenchResult ra = io::RunBench(StandardMatrix(a, 4));
  const io::BenchResult rb = io::RunBench(StandardMatrix(b, 4));
  int compared = 0;
  int differing = 0;
  for (const io::SummaryRow& row : ra.rows) {
    for (const char* file : {"report.json", "trajectory.csv"}) {
      const fs::path rel = fs::path("episodes") / io::EpisodeDirName(row) / file;
      ++compared;
      if (!fs::exists(a / rel) || !fs::exists(b / rel) ||
          io::ReadFile(a / rel) != io::ReadFile(b / rel)) {
        ++differing;
      }
    }
  }
  const bool summary_same = WithoutLastColumn(io::ReadFile(a / "summary.csv")) ==
                            WithoutLastColumn(io::ReadFile(b / "summary.csv"));
  const bool pass = ra.rows.size() == 15 && ra.errors == 0 && rb.errors == 0 &&
                    differing == 0 && summary_same;
  fs::remove_all(a);
  fs::remove_all(b);
  return {pass, Fmt("%zu episodes, %d/%d episode files identical, summary %s", ra.rows.size(),
                    compared - differing, compared,
                    summary_same ? "identical except wall time" : "differs")};
}

// 9. Episode and matrix wall time.
Result Performance() {
  EpisodeConfig cfg = ZucchiniEpisode();
  const auto start = Clock::now();
  const EpisodeReport r = RunEpisode(cfg);
  const double episode = Seconds(start);
  const double simulated = r.final_state.t;

  const fs::path out = ScratchDir("performance");
  const auto matrix_start = Clock::now();
  const io::BenchResult bench = io::RunBench(StandardMatrix(out, 4));
  const double matrix = Seconds(matrix_start);
  fs::remove_all(out);
  const bool pass = episode < 2.0 && matrix < 10.0 && bench.errors == 0 &&
                    r.outcome == Outcome::kGoalReached;
  return {pass, Fmt("zucchini episode %.3f s for %.1f s simulated (%.0fx real time), "
                    "15-episode matrix on 4 workers %.2f s",
                    episode, simulated, simulated / episode, matrix)};
}

// 10. Exported files read back losslessly and strictly.
Result ExportIntegrity() {
  const fs::path out = ScratchDir("export");
  const World w = GenerateWorld(Preset("zucchini"), kDefaultSeed);
  const io::Json manifest = io::ExportWorld(w.layout, w.terrain, out);
  const bool round_trip =
      io::LayoutFromJson(io::Json::parse(io::ReadFile(out / "world.json"))) == w.layout;
  std::string parse_error;
  std::size_t terrain_vertices = 0;
  std::size_t plant_objects = 0;
  try {
    terrain_vertices = io::ParseObjStrict(io::ReadFile(out / "terrain.obj")).vertices.size();
    plant_objects = io::ParseObjStrict(io::ReadFile(out / "plants.obj")).objects.size();
  } catch (const std::exception& e) {
    parse_error = e.what();
  }
  const auto& t = manifest["terrain"];
  const std::size_t nx = t["nx"].get<std::size_t>();
  const std::size_t ny = t["ny"].get<std::size_t>();
  const std::size_t listed = t["vertex_count"].get<std::size_t>();
  bool hashes_ok = true;
  for (const io::Json& f : manifest["files"]) {
    hashes_ok = hashes_ok && io::Sha256Hex(io::ReadFile(out / f["path"].get<std::string>())) ==
                                 f["sha256"].get<std::string>();
  }
  fs::remove_all(out);
  const bool pass = round_trip && parse_error.empty() && nx == 241 && ny == 153 &&
                    listed == nx * ny && terrain_vertices == listed &&
                    plant_objects == w.layout.plants.size() && hashes_ok;
  return {pass, Fmt("world.json round trip %s, OBJ strict parse %s, terrain vertices %zu "
                    "(manifest %zu x %zu = %zu), %zu plant objects, hashes %s",
                    round_trip ? "exact" : "differs",
                    parse_error.empty() ? "ok" : parse_error.c_str(), terrain_vertices, nx, ny,
                    listed, plant_objects, hashes_ok ? "match" : "mismatch")};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Result()> run;
};

}  // namespace
}  // namespace rowcrop

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  int only = 0;
  rowcrop::g_cli_path = ROWCROP_CLI_PATH;
  app.add_option("--criterion", only, "Run a single criterion (1-10)")->check(CLI::Range(1, 10));
  app.add_option("--cli", rowcrop::g_cli_path, "Path to the rowcrop executable");
  CLI11_PARSE(app, argc, argv);

  using rowcrop::Criterion;
  const std::vector<Criterion> criteria = {
      {1, "preset fidelity", rowcrop::PresetFidelity},
      {2, "control-law algebra", rowcrop::ControlLawAlgebra},
      {3, "centered regulation", rowcrop::CenteredRegulation},
      {4, "disturbance recovery", rowcrop::DisturbanceRecovery},
      {5, "full matrix completion", rowcrop::FullMatrix},
      {6, "metric identities", rowcrop::MetricIdentities},
      {7, "terrain properties", rowcrop::TerrainProperties},
      {8, "determinism", rowcrop::Determinism},
      {9, "performance", rowcrop::Performance},
      {10, "export integrity", rowcrop::ExportIntegrity},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    rowcrop::Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failed += !r.pass;
    std::printf("criterion %d (%s): %s - %s\n", c.id, c.name, r.pass ? "PASS" : "FAIL",
                r.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
