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

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "rowcrop/field.hpp"
#include "rowcrop/geometry.hpp"
#include "rowcrop/terrain.hpp"

namespace rowcrop::io {

inline constexpr int kSphereSegments = 16;
inline constexpr int kCylinderSegments = 16;

// Two triangles per grid cell, one object named "terrain".
std::string TerrainObj(const Heightfield& terrain);

// One object per plant: a UV sphere scaled to the crown semi-axes and, for
// trunked plants, a capped cylinder. Empty string when there are no plants.
std::string PlantsObj(const FieldLayout& layout, const Heightfield& terrain);

struct ObjObject {
  std::string name;
  int first_face = 0;
  int face_count = 0;
};

struct ObjMesh {
  std::vector<Vec3> vertices;
  std::vector<std::vector<int>> faces;  // zero-based vertex indices
  std::vector<ObjObject> objects;
};

// Accepts only "v x y z", "f i j k ..." with positive indices of already
// declared vertices, "o name", and blank lines. Anything else raises
// Error(kReadError) naming the line.
ObjMesh ParseObjStrict(std::string_view text);

}  // namespace rowcrop::io
