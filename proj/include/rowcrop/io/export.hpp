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
#include <span>
#include <vector>

#include "rowcrop/camera.hpp"
#include "rowcrop/field.hpp"
#include "rowcrop/io/json_io.hpp"
#include "rowcrop/terrain.hpp"

namespace rowcrop::io {

// Writes terrain.obj, plants.obj, world.json and manifest.json into out_dir
// and returns the manifest.
Json ExportWorld(const FieldLayout& layout, const Heightfield& terrain,
                 const std::filesystem::path& out_dir);

// Writes mask_NNNNNN.png and pose_NNNNNN.json per camera plus manifest.json.
// Every pose is checked before anything is written; a bad pose raises
// Error(kInvalidPose) naming its index.
Json ExportDataset(const FieldLayout& layout, const Heightfield& terrain,
                   std::span<const CameraModel> sweep,
                   const std::filesystem::path& out_dir);

// Seeded camera poses scattered over the planted area with varied height and
// orientation, all above the terrain surface.
std::vector<CameraModel> MakeCameraSweep(const FieldLayout& layout,
                                         const Heightfield& terrain,
                                         const CameraModel& intrinsics, int count,
                                         std::uint64_t seed);

// Manifest entry for a file already written under `root`.
Json FileEntry(const std::filesystem::path& root, const std::filesystem::path& rel);

}  // namespace rowcrop::io
