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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <numbers>

#include "rowcrop/error.hpp"
#include "rowcrop/io/bench.hpp"
#include "rowcrop/io/export.hpp"
#include "rowcrop/io/files.hpp"
#include "rowcrop/io/json_io.hpp"
#include "rowcrop/io/obj_io.hpp"
#include "rowcrop/io/png_io.hpp"
#include "rowcrop/io/report.hpp"
#include "rowcrop/sim.hpp"

namespace rowcrop::io {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() /
            (std::string("rowcrop_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kUnknownPreset;
}

TEST(HashTest, KnownDigests) {
  EXPECT_EQ(Sha256Hex(std::string_view("")),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(Sha256Hex(std::string_view("abc")),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(JsonTest, LayoutRoundTripsExactly) {
  for (const std::string& name : PresetNames()) {
    const FieldLayout layout = GenerateWorld(Preset(name), 31).layout;
    const std::string text = LayoutToJson(layout).dump(2);
    EXPECT_EQ(LayoutFromJson(Json::parse(text)), layout) << name;
  }
  FieldLayout empty;
  empty.params = Preset("lettuce");
  EXPECT_EQ(LayoutFromJson(Json::parse(LayoutToJson(empty).dump())), empty);
}

TEST(JsonTest, LayoutRejectsUnknownKeysAndVersions) {
  Json j = LayoutToJson(GenerateWorld(Preset("chard"), 1).layout);
  Json extra = j;
  extra["colour"] = "green";
  EXPECT_EQ(CodeOf([&] { LayoutFromJson(extra); }), ErrorCode::kConfigError);
  Json version = j;
  version["schema_version"] = 2;
  EXPECT_EQ(CodeOf([&] { LayoutFromJson(version); }), ErrorCode::kConfigError);
  Json plant = j;
  plant["plants"][0]["mass"] = 1.0;
  EXPECT_EQ(CodeOf([&] { LayoutFromJson(plant); }), ErrorCode::kConfigError);
  Json missing = j;
  missing.erase("plants");
  EXPECT_EQ(CodeOf([&] { LayoutFromJson(missing); }), ErrorCode::kConfigError);
}

TEST(JsonTest, EpisodeConfigRoundTripAndOverrides) {
  EpisodeConfig cfg;
  cfg.field = Preset("vineyard");
  cfg.seed = 123456789012345ULL;
  cfg.corridor_index = 2;
  cfg.corruption = {0.05, 1, 2, 3, 4};
  cfg.start_lateral_offset = -0.2;
  cfg.camera.pose.pitch = 0.1;
  EXPECT_EQ(EpisodeConfigFromJson(Json::parse(ToJson(cfg).dump())), cfg);

  const EpisodeConfig partial =
      EpisodeConfigFromJson(Json::parse(R"({"field": "pear", "dt": 0.02})"));
  EXPECT_EQ(partial.field, Preset("pear"));
  EXPECT_EQ(partial.dt, 0.02);
  EXPECT_EQ(partial.control_period, EpisodeConfig{}.control_period);

  const FieldParams tweaked = FieldParamsFromJson(
      Json::parse(R"({"preset": "lettuce", "num_rows": 5, "terrain": {"slope": 0.1}})"));
  EXPECT_EQ(tweaked.num_rows, 5);
  EXPECT_EQ(tweaked.terrain.slope, 0.1);
  EXPECT_EQ(tweaked.terrain.width, 25);

  EXPECT_EQ(CodeOf([] { EpisodeConfigFromJson(Json::parse(R"({"speed": 1})")); }),
            ErrorCode::kConfigError);
  EXPECT_EQ(CodeOf([] { EpisodeConfigFromJson(Json::parse(R"({"dt": "fast"})")); }),
            ErrorCode::kConfigError);
  EXPECT_EQ(CodeOf([] { FieldParamsFromJson(Json::parse(R"({"num_rows": 2.5})")); }),
            ErrorCode::kConfigError);
  EXPECT_EQ(CodeOf([] { EpisodeConfigFromJson(Json::parse(R"({"field": "kale"})")); }),
            ErrorCode::kUnknownPreset);
}

TEST(ObjTest, TerrainMeshCounts) {
  const Heightfield hf = GenerateHeightfield(Preset("zucchini").terrain, 3);
  const ObjMesh mesh = ParseObjStrict(TerrainObj(hf));
  EXPECT_EQ(mesh.vertices.size(), 241u * 153u);
  EXPECT_EQ(mesh.faces.size(), 2u * 240u * 152u);
  ASSERT_EQ(mesh.objects.size(), 1u);
  EXPECT_EQ(mesh.objects[0].name, "terrain");
  // Vertex (i, j) sits at (i * res, j * res, height) to six decimals.
  const Vec3& v = mesh.vertices[5 * 241 + 7];
  EXPECT_NEAR(v.x, 7 * 0.25, 1e-9);
  EXPECT_NEAR(v.y, 5 * 0.25, 1e-9);
  EXPECT_NEAR(v.z, hf.vertex(7, 5), 5e-7);
  // Triangles are counter-clockwise seen from above.
  for (const auto& f : mesh.faces) {
    const Vec3 a = mesh.vertices[f[0]], b = mesh.vertices[f[1]], c = mesh.vertices[f[2]];
    EXPECT_GT((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x), 0.0);
  }
}

TEST(ObjTest, PlantMeshTopology) {
  const World w = GenerateWorld(Preset("vineyard"), 4);
  const ObjMesh mesh = ParseObjStrict(PlantsObj(w.layout, w.terrain));
  ASSERT_EQ(mesh.objects.size(), w.layout.plants.size());
  EXPECT_EQ(mesh.objects[0].name, "plant_000000");
  // Sphere 242 vertices and 480 triangles, capped cylinder 34 and 64.
  EXPECT_EQ(mesh.vertices.size(), w.layout.plants.size() * (242u + 34u));
  for (const ObjObject& o : mesh.objects) EXPECT_EQ(o.face_count, 480 + 64);
  const World z = GenerateWorld(Preset("lettuce"), 4);
  const ObjMesh bushes = ParseObjStrict(PlantsObj(z.layout, z.terrain));
  EXPECT_EQ(bushes.vertices.size(), z.layout.plants.size() * 242u);
  for (const ObjObject& o : bushes.objects) EXPECT_EQ(o.face_count, 480);
}

TEST(ObjTest, SphereVerticesLieOnEllipsoid) {
  FieldLayout layout;
  layout.plants.push_back({{2, 3}, {0.8, 0.6, 0.4, PlantShape::kEllipsoid, 0, 0}});
  const Heightfield flat = GenerateHeightfield({5, 5, 0.0, 0.25, 0.0}, 1);
  const ObjMesh mesh = ParseObjStrict(PlantsObj(layout, flat));
  for (const Vec3& v : mesh.vertices) {
    const double r = std::pow((v.x - 2) / 0.4, 2) + std::pow((v.y - 3) / 0.3, 2) +
                     std::pow((v.z - 0.2) / 0.2, 2);
    EXPECT_NEAR(r, 1.0, 1e-5);
  }
}

TEST(ObjTest, EmptyFieldGivesEmptyFile) {
  FieldLayout layout;
  const Heightfield flat = GenerateHeightfield({5, 5, 0.0, 0.25, 0.0}, 1);
  EXPECT_EQ(PlantsObj(layout, flat), "");
  EXPECT_TRUE(ParseObjStrict("").objects.empty());
}

TEST(ObjTest, StrictGrammar) {
  EXPECT_NO_THROW(ParseObjStrict("o a\nv 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n\n"));
  for (const char* bad :
       {"mtllib x.mtl\n", "# comment\n", "v 0 0\n", "v 0 0 0 1\n", "v 0 0 zero\n",
        "v 0 0 0\nf 1 1\n", "v 0 0 0\nf 1 2 3\n", "v 0 0 0\nf 1/1 1 1\n",
        "vn 0 0 1\n", "usemtl red\n", "o\n", "v 0 0 0\nf 0 1 1\n"}) {
    EXPECT_EQ(CodeOf([&] { ParseObjStrict(bad); }), ErrorCode::kReadError) << bad;
  }
}

TEST(PngTest, RoundTrip) {
  TempDir dir;
  Mask m(37, 11);
  for (int y = 0; y < 11; ++y) {
    for (int x = 0; x < 37; ++x) m.set(x, y, (x * y) % 3 == 0);
  }
  WriteMaskPng(dir.path() / "m.png", m);
  EXPECT_EQ(ReadMaskPng(dir.path() / "m.png"), m);
  EXPECT_EQ(CodeOf([&] { ReadMaskPng(dir.path() / "missing.png"); }),
            ErrorCode::kReadError);
  WriteFile(dir.path() / "bad.png", "not a png");
  EXPECT_EQ(CodeOf([&] { ReadMaskPng(dir.path() / "bad.png"); }), ErrorCode::kReadError);
}

TEST(ExportWorldTest, FilesManifestAndDeterminism) {
  TempDir a, b;
  const World w = GenerateWorld(Preset("zucchini"), 42);
  const Json manifest = ExportWorld(w.layout, w.terrain, a.path());
  ExportWorld(w.layout, w.terrain, b.path());
  EXPECT_EQ(manifest["terrain"]["vertex_count"].get<int>(), 241 * 153);
  EXPECT_EQ(manifest["terrain"]["nx"].get<int>() * manifest["terrain"]["ny"].get<int>(),
            manifest["terrain"]["vertex_count"].get<int>());
  ASSERT_EQ(manifest["files"].size(), 3u);
  for (const Json& f : manifest["files"]) {
    const std::string bytes = ReadFile(a.path() / f["path"].get<std::string>());
    EXPECT_EQ(Sha256Hex(bytes), f["sha256"].get<std::string>());
    EXPECT_EQ(bytes.size(), f["bytes"].get<std::size_t>());
    EXPECT_EQ(bytes, ReadFile(b.path() / f["path"].get<std::string>()));
  }
  EXPECT_EQ(ReadFile(a.path() / "manifest.json"), ReadFile(b.path() / "manifest.json"));
  EXPECT_EQ(LayoutFromJson(Json::parse(ReadFile(a.path() / "world.json"))), w.layout);
  EXPECT_EQ(ParseObjStrict(ReadFile(a.path() / "terrain.obj")).vertices.size(),
            manifest["terrain"]["vertex_count"].get<std::size_t>());
}

TEST(ExportWorldTest, EmptyField) {
  TempDir dir;
  FieldLayout layout;
  layout.params = Preset("chard");
  const Heightfield hf = GenerateHeightfield(layout.params.terrain, 1);
  ExportWorld(layout, hf, dir.path());
  EXPECT_EQ(ReadFile(dir.path() / "plants.obj"), "");
  EXPECT_TRUE(Json::parse(ReadFile(dir.path() / "world.json"))["plants"].empty());
}

TEST(ExportDatasetTest, SweepWritesPairs) {
  TempDir a, b;
  const World w = GenerateWorld(Preset("lettuce"), 42);
  const auto sweep = MakeCameraSweep(w.layout, w.terrain, CameraModel{}, 10, 8);
  ASSERT_EQ(sweep.size(), 10u);
  const Json manifest = ExportDataset(w.layout, w.terrain, sweep, a.path());
  ExportDataset(w.layout, w.terrain, sweep, b.path());
  EXPECT_EQ(manifest["count"].get<int>(), 10);
  EXPECT_EQ(manifest["files"].size(), 20u);
  int listed = 0;
  for (const auto& entry : fs::directory_iterator(a.path())) {
    const std::string name = entry.path().filename().string();
    if (name == "manifest.json") continue;
    ++listed;
    EXPECT_EQ(ReadFile(entry.path()), ReadFile(b.path() / name));
  }
  EXPECT_EQ(listed, 20);
  const Mask first = ReadMaskPng(a.path() / "mask_000000.png");
  EXPECT_EQ(first, RenderMask(sweep[0], w.layout, w.terrain));
  const CameraModel pose0 = CameraModelFromJson(
      Json::parse(ReadFile(a.path() / "pose_000000.json"))["camera"]);
  EXPECT_EQ(pose0, sweep[0]);
}

TEST(ExportDatasetTest, FacingAwayIsBlank) {
  TempDir dir;
  const World w = GenerateWorld(Preset("lettuce"), 42);
  CameraModel cam;
  cam.pose.position = {0.5, 12, w.terrain.HeightAt(0.5, 12) + 0.5};
  cam.pose.yaw = std::numbers::pi;
  cam.pose.pitch = -0.2;
  ExportDataset(w.layout, w.terrain, std::vector<CameraModel>{cam}, dir.path());
  EXPECT_EQ(ReadMaskPng(dir.path() / "mask_000000.png").CountOnes(), 0u);
}

TEST(ExportDatasetTest, InvalidPoseNamesIndex) {
  TempDir dir;
  const World w = GenerateWorld(Preset("lettuce"), 42);
  auto sweep = MakeCameraSweep(w.layout, w.terrain, CameraModel{}, 4, 8);
  sweep[2].pose.position.z = -5;
  try {
    ExportDataset(w.layout, w.terrain, sweep, dir.path());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidPose);
    EXPECT_NE(std::string(e.what()).find("pose 2"), std::string::npos);
  }
  EXPECT_FALSE(fs::exists(dir.path() / "mask_000000.png"));
}

TEST(ReportTest, TrajectoryCsvShape) {
  EpisodeConfig cfg;
  cfg.field = Preset("chard");
  const EpisodeReport r = RunEpisode(cfg);
  const std::string csv = TrajectoryCsv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,x,y,yaw,v_cmd,omega_cmd,e_ct");
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')),
            r.trajectory.size() + 1);
  const Json report = Json::parse(ReportJson(r));
  EXPECT_EQ(report["outcome"], std::string(OutcomeName(r.outcome)));
  EXPECT_EQ(EpisodeConfigFromJson(report["config"]), cfg);
  EXPECT_EQ(report["trajectory"].size(), r.trajectory.size());
}

TEST(ReportTest, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 123456.789}) {
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
  EXPECT_EQ(FormatDouble(std::nan("")), "nan");
}

Json SmallBench(const fs::path& out) {
  return Json::parse(R"({
    "schema_version": 1,
    "output_dir": ")" + out.string() + R"(",
    "workers": 2,
    "episode": {"path_length": 4.0},
    "fields": {"tiny": {"preset": "lettuce", "num_rows": 2, "obstacle_density": 0.0}},
    "matrix": {
      "crops": ["tiny", "chard"],
      "seeds": [2, 1],
      "disturbances": [
        {"name": "nominal"},
        {"name": "offset", "start_lateral_offset": 0.05,
         "corruption": {"flip_prob": 0.01}}
      ]
    }
  })");
}

TEST(BenchTest, RunsMatrixAndWritesSortedSummary) {
  TempDir dir;
  const RunConfig cfg = RunConfigFromJson(SmallBench(dir.path()));
  const BenchResult result = RunBench(cfg);
  EXPECT_EQ(result.errors, 0);
  ASSERT_EQ(result.rows.size(), 8u);
  EXPECT_EQ(result.rows[0].crop, "chard");
  EXPECT_EQ(result.rows[0].seed, 1u);
  EXPECT_EQ(result.rows[0].disturbance, "nominal");
  EXPECT_EQ(result.rows[7].crop, "tiny");
  EXPECT_EQ(result.rows[7].seed, 2u);
  EXPECT_EQ(result.rows[7].disturbance, "offset");
  const std::string summary = ReadFile(dir.path() / "summary.csv");
  EXPECT_EQ(static_cast<int>(std::count(summary.begin(), summary.end(), '\n')), 9);
  EXPECT_EQ(summary.substr(0, summary.find('\n')),
            "crop,seed,disturbance,outcome,cha_rad,mae_m,mse_m2,omega_std_rad_s,wall_time_s");
  const Json manifest = Json::parse(ReadFile(dir.path() / "manifest.json"));
  EXPECT_EQ(manifest["files"].size(), 17u);
  for (const Json& f : manifest["files"]) {
    EXPECT_EQ(Sha256Hex(ReadFile(dir.path() / f["path"].get<std::string>())),
              f["sha256"].get<std::string>());
  }
  const Json report = Json::parse(
      ReadFile(dir.path() / "episodes" / "tiny_seed1_offset" / "report.json"));
  EXPECT_EQ(report["config"]["start_lateral_offset"].get<double>(), 0.05);
  EXPECT_EQ(report["config"]["corruption"]["flip_prob"].get<double>(), 0.01);
  EXPECT_EQ(report["config"]["field"]["num_rows"].get<int>(), 2);
}

TEST(BenchTest, FailedEpisodeIsRecordedAndRunContinues) {
  TempDir dir;
  Json j = SmallBench(dir.path());
  j["matrix"]["crops"] = {"chard"};
  j["matrix"]["disturbances"] = Json::array(
      {{{"name", "ok"}}, {{"name", "outside"}, {"start_lateral_offset", -40.0}}});
  const BenchResult result = RunBench(RunConfigFromJson(j));
  EXPECT_EQ(result.errors, 2);
  ASSERT_EQ(result.rows.size(), 4u);
  EXPECT_EQ(result.rows[0].disturbance, "ok");
  EXPECT_NE(result.rows[0].outcome, "Error");
  EXPECT_EQ(result.rows[1].outcome, "Error");
  EXPECT_NE(ReadFile(dir.path() / "summary.csv").find(",Error,"), std::string::npos);
}

TEST(BenchTest, ConfigValidationHappensUpFront) {
  TempDir dir;
  const auto code = [&](auto mutate) {
    Json j = SmallBench(dir.path());
    mutate(j);
    return CodeOf([&] { RunConfigFromJson(j); });
  };
  EXPECT_EQ(code([](Json& j) { j["matrix"]["crops"].push_back("kale"); }),
            ErrorCode::kConfigError);
  EXPECT_EQ(code([](Json& j) { j["extra"] = 1; }), ErrorCode::kConfigError);
  EXPECT_EQ(code([](Json& j) { j["schema_version"] = 7; }), ErrorCode::kConfigError);
  EXPECT_EQ(code([](Json& j) { j["episode"]["seed"] = 3; }), ErrorCode::kConfigError);
  EXPECT_EQ(code([](Json& j) { j["matrix"]["seeds"] = Json::array(); }),
            ErrorCode::kConfigError);
  EXPECT_EQ(code([](Json& j) { j["matrix"]["seeds"].push_back(1); }),
            ErrorCode::kConfigError);
  EXPECT_EQ(code([](Json& j) { j["episode"]["dt"] = 1.0; }), ErrorCode::kConfigError);
  EXPECT_FALSE(fs::exists(dir.path() / "summary.csv"));
  // The canonical form reads back to the same configuration.
  const RunConfig cfg = RunConfigFromJson(SmallBench(dir.path()));
  const RunConfig again = RunConfigFromJson(ToJson(cfg));
  EXPECT_EQ(ToJson(again), ToJson(cfg));
}

}  // namespace
}  // namespace rowcrop::io
