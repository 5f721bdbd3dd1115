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

#include "rowcrop/io/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "rowcrop/error.hpp"
#include "rowcrop/io/files.hpp"
#include "rowcrop/io/obj_io.hpp"
#include "rowcrop/io/png_io.hpp"
#include "rowcrop/mask_oracle.hpp"
#include "rowcrop/rng.hpp"

namespace rowcrop::io {
namespace {

std::string Indexed(const char* stem, std::size_t i, const char* ext) {
  char name[64];
  std::snprintf(name, sizeof(name), "%s_%06zu.%s", stem, i, ext);
  return name;
}

void CheckPose(const CameraModel& cam, const Heightfield& terrain, std::size_t index) {
  try {
    Validate(cam);
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvalidPose,
                "pose " + std::to_string(index) + ": " + e.what());
  }
  const Vec3& p = cam.pose.position;
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z) ||
      !std::isfinite(cam.pose.yaw) || !std::isfinite(cam.pose.pitch) ||
      !std::isfinite(cam.pose.roll)) {
    throw Error(ErrorCode::kInvalidPose,
                "pose " + std::to_string(index) + ": non-finite pose");
  }
  if (terrain.Contains(p.x, p.y) && p.z <= terrain.HeightAt(p.x, p.y)) {
    throw Error(ErrorCode::kInvalidPose,
                "pose " + std::to_string(index) + ": camera at or below terrain");
  }
}

}  // namespace

Json FileEntry(const std::filesystem::path& root, const std::filesystem::path& rel) {
  const std::string bytes = ReadFile(root / rel);
  return {{"path", rel.generic_string()},
          {"bytes", bytes.size()},
          {"sha256", Sha256Hex(bytes)}};
}

Json ExportWorld(const FieldLayout& layout, const Heightfield& terrain,
                 const std::filesystem::path& out_dir) {
  WriteFile(out_dir / "terrain.obj", TerrainObj(terrain));
  WriteFile(out_dir / "plants.obj", PlantsObj(layout, terrain));
  WriteFile(out_dir / "world.json", LayoutToJson(layout).dump(2) + "\n");

  int trunks = 0;
  for (const Plant& p : layout.plants) trunks += p.spec.shape == PlantShape::kTrunkCrown;
  Json manifest = {
      {"schema_version", kSchemaVersion},
      {"kind", "rowcrop.world_manifest"},
      {"files", Json::array({FileEntry(out_dir, "terrain.obj"),
                             FileEntry(out_dir, "plants.obj"),
                             FileEntry(out_dir, "world.json")})},
      {"terrain",
       {{"nx", terrain.nx()},
        {"ny", terrain.ny()},
        {"resolution", terrain.resolution()},
        {"vertex_count", terrain.nx() * terrain.ny()},
        {"triangle_count", 2 * (terrain.nx() - 1) * (terrain.ny() - 1)}}},
      {"plants",
       {{"object_count", layout.plants.size()},
        {"sphere_segments", kSphereSegments},
        {"cylinder_segments", kCylinderSegments},
        {"trunk_count", trunks}}}};
  WriteFile(out_dir / "manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

Json ExportDataset(const FieldLayout& layout, const Heightfield& terrain,
                   std::span<const CameraModel> sweep,
                   const std::filesystem::path& out_dir) {
  for (std::size_t i = 0; i < sweep.size(); ++i) CheckPose(sweep[i], terrain, i);
  const Scene scene(layout, terrain);
  Json files = Json::array();
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    Mask mask;
    try {
      mask = RenderMask(sweep[i], scene);
    } catch (const Error& e) {
      throw Error(ErrorCode::kInvalidPose, "pose " + std::to_string(i) + ": " + e.what());
    }
    const std::string mask_name = Indexed("mask", i, "png");
    const std::string pose_name = Indexed("pose", i, "json");
    WriteMaskPng(out_dir / mask_name, mask);
    Json pose = {{"schema_version", kSchemaVersion},
                 {"kind", "rowcrop.camera"},
                 {"index", i},
                 {"camera", ToJson(sweep[i])},
                 {"plant_pixels", mask.CountOnes()}};
    WriteFile(out_dir / pose_name, pose.dump(2) + "\n");
    files.push_back(FileEntry(out_dir, mask_name));
    files.push_back(FileEntry(out_dir, pose_name));
  }
  Json manifest = {{"schema_version", kSchemaVersion},
                   {"kind", "rowcrop.dataset_manifest"},
                   {"count", sweep.size()},
                   {"world_seed", layout.seed},
                   {"crop_name", layout.params.crop_name},
                   {"mask_encoding", {{"free", 0}, {"plant", 255}}},
                   {"files", std::move(files)}};
  WriteFile(out_dir / "manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

std::vector<CameraModel> MakeCameraSweep(const FieldLayout& layout,
                                         const Heightfield& terrain,
                                         const CameraModel& intrinsics, int count,
                                         std::uint64_t seed) {
  if (count < 0) throw Error(ErrorCode::kInvalidParams, "sweep count must be >= 0");
  double y_lo = 0.0;
  double y_hi = terrain.y_extent();
  if (!layout.row_centerlines.empty()) {
    y_lo = y_hi = layout.row_centerlines.front().a.y;
    for (const Segment& s : layout.row_centerlines) {
      y_lo = std::min(y_lo, s.a.y);
      y_hi = std::max(y_hi, s.a.y);
    }
    for (const Segment& s : layout.corridor_centerlines) {
      y_lo = std::min(y_lo, s.a.y);
      y_hi = std::max(y_hi, s.a.y);
    }
  }
  const double x_lo = 0.0;
  const double x_hi = terrain.x_extent();
  Rng rng(seed);
  std::vector<CameraModel> sweep;
  sweep.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    CameraModel cam = intrinsics;
    const double x = rng.Uniform(x_lo, x_hi);
    const double y = std::clamp(rng.Uniform(y_lo, y_hi), 0.0, terrain.y_extent());
    const double height = rng.Uniform(0.3, 1.5);
    cam.pose.position = {x, y, terrain.HeightAt(x, y) + height};
    // Mostly along the rows in either direction, with some yaw spread.
    const double heading = rng.Uniform() < 0.5 ? 0.0 : std::numbers::pi;
    cam.pose.yaw = WrapAngle(heading + rng.Uniform(-0.35, 0.35));
    cam.pose.pitch = rng.Uniform(0.0, 0.6);
    cam.pose.roll = rng.Uniform(-0.1, 0.1);
    sweep.push_back(cam);
  }
  return sweep;
}

}  // namespace rowcrop::io
