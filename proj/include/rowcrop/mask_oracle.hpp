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
#include <optional>
#include <vector>

#include "rowcrop/camera.hpp"
#include "rowcrop/field.hpp"
#include "rowcrop/geometry.hpp"
#include "rowcrop/mask.hpp"
#include "rowcrop/terrain.hpp"

namespace rowcrop {

// Axis-aligned solid ellipsoid.
struct Ellipsoid {
  Vec3 center;
  Vec3 semi_axes;
};

// Vertical solid cylinder between heights z0 and z1.
struct Cylinder {
  Vec2 axis;
  double z0 = 0.0;
  double z1 = 0.0;
  double radius = 0.0;
};

// Exact ray/solid tests. `dir` need not be normalized; a hit counts when the
// first point of the solid along the ray is within `max_range` of `origin`.
// An origin inside the solid hits at distance zero.
bool RayHitsEllipsoid(const Vec3& origin, const Vec3& dir, const Ellipsoid& e,
                      double max_range);
bool RayHitsCylinder(const Vec3& origin, const Vec3& dir, const Cylinder& c,
                     double max_range);

// Plant primitives resolved against the terrain surface. Keeps a reference to
// the heightfield, which must outlive the scene.
// Solid primitives standing in for one plant, resting on the terrain.
struct PlantPrimitives {
  Ellipsoid crown;
  std::optional<Cylinder> trunk;
};

PlantPrimitives MakePlantPrimitives(const Plant& plant, const Heightfield& terrain);

class Scene {
 public:
  Scene(const FieldLayout& layout, const Heightfield& terrain);

  const Heightfield& terrain() const { return *terrain_; }
  const std::vector<Ellipsoid>& ellipsoids() const { return ellipsoids_; }
  const std::vector<Cylinder>& cylinders() const { return cylinders_; }

 private:
  const Heightfield* terrain_;
  std::vector<Ellipsoid> ellipsoids_;
  std::vector<Cylinder> cylinders_;
};

// Pixel is 1 iff its center ray hits a plant primitive within max_range.
// Terrain never occludes and renders as 0. Throws Error(kInvalidPose) when
// the camera is at or below the terrain surface.
Mask RenderMask(const CameraModel& cam, const Scene& scene);
Mask RenderMask(const CameraModel& cam, const FieldLayout& layout,
                const Heightfield& terrain);

struct CorruptionParams {
  double flip_prob = 0.0;
  int dilate_px = 0;
  int erode_px = 0;
  int dropout_blocks = 0;
  int dropout_size_px = 0;

  friend bool operator==(const CorruptionParams&, const CorruptionParams&) = default;
};

void Validate(const CorruptionParams& params);

// Square-window morphology; out-of-image pixels are ignored.
Mask Dilate(const Mask& mask, int radius);
Mask Erode(const Mask& mask, int radius);

// Flips, then dilation, then erosion, then zeroed dropout blocks.
// Deterministic in seed.
Mask CorruptMask(const Mask& mask, const CorruptionParams& params,
                 std::uint64_t seed);

}  // namespace rowcrop
