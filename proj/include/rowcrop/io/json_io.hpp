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

#include <initializer_list>
#include <string_view>

#include "json.hpp"

#include "rowcrop/camera.hpp"
#include "rowcrop/controller.hpp"
#include "rowcrop/field.hpp"
#include "rowcrop/mask_oracle.hpp"
#include "rowcrop/metrics.hpp"
#include "rowcrop/sim.hpp"
#include "rowcrop/terrain.hpp"

namespace rowcrop::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Throws Error(kConfigError) unless `j` is an object whose keys all appear in
// `allowed`.
void RequireKnownKeys(const Json& j, std::initializer_list<std::string_view> allowed,
                      std::string_view context);

// Writers emit every field. Readers are strict: unknown keys raise
// Error(kConfigError). Keys missing from the input keep the value already in
// `base`, so readers double as override mechanisms.
Json ToJson(const PlantSpec& spec);
Json ToJson(const TerrainSpec& spec);
Json ToJson(const FieldParams& params);
Json ToJson(const CameraModel& cam);
Json ToJson(const CorruptionParams& params);
Json ToJson(const ControllerConfig& cfg);
Json ToJson(const EpisodeConfig& cfg);
Json ToJson(const MetricsRecord& metrics);
Json ToJson(const EpisodeReport& report);

PlantSpec PlantSpecFromJson(const Json& j, PlantSpec base = {});
TerrainSpec TerrainSpecFromJson(const Json& j, TerrainSpec base = {});
// Accepts an optional "preset" key naming the starting point.
FieldParams FieldParamsFromJson(const Json& j, FieldParams base = {});
CameraModel CameraModelFromJson(const Json& j, CameraModel base = {});
CorruptionParams CorruptionParamsFromJson(const Json& j, CorruptionParams base = {});
ControllerConfig ControllerConfigFromJson(const Json& j, ControllerConfig base = {});
// Episode settings; "field" may be an object or a preset name.
EpisodeConfig EpisodeConfigFromJson(const Json& j, EpisodeConfig base = {});

// Versioned layout document (world.json).
Json LayoutToJson(const FieldLayout& layout);
FieldLayout LayoutFromJson(const Json& j);

}  // namespace rowcrop::io
