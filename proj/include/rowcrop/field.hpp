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
#include <string>
#include <string_view>
#include <vector>

#include "rowcrop/geometry.hpp"
#include "rowcrop/terrain.hpp"

namespace rowcrop {

enum class PlantShape { kEllipsoid, kTrunkCrown };

std::string_view PlantShapeName(PlantShape shape);
PlantShape ParsePlantShape(std::string_view name);

// Bounding dimensions of one plant. `length` runs along the row, `width`
// across it. Trunk fields are only meaningful for kTrunkCrown.
struct PlantSpec {
  double length = 0.0;
  double width = 0.0;
  double height = 0.0;
  PlantShape shape = PlantShape::kEllipsoid;
  double trunk_radius = 0.0;
  double trunk_height = 0.0;

  friend bool operator==(const PlantSpec&, const PlantSpec&) = default;
};

void Validate(const PlantSpec& spec);

// Returns a copy with every dimension multiplied by `factor`.
PlantSpec Scaled(const PlantSpec& spec, double factor);

struct FieldParams {
  std::string crop_name;
  double row_length = 0.0;
  int num_rows = 1;
  int rows_per_group = 1;
  double d_rr = 0.0;  // row to row, inside a group
  double d_RR = 0.0;  // between groups
  double d_pp = 0.0;  // plant to plant along a row
  double scale = 1.0;
  PlantSpec plant;
  TerrainSpec terrain;
  double obstacle_density = 0.01;  // per square meter of corridor
  double plant_jitter = 0.05;      // std of positional noise, meters

  friend bool operator==(const FieldParams&, const FieldParams&) = default;
};

// Throws Error(kInvalidParams) describing the first violated invariant.
void Validate(const FieldParams& params);

// Terrain after applying params.scale to its horizontal extent.
TerrainSpec EffectiveTerrain(const FieldParams& params);

struct Plant {
  Vec2 position;
  PlantSpec spec;

  friend bool operator==(const Plant&, const Plant&) = default;
};

struct Obstacle {
  Vec2 position;
  double radius = 0.0;

  friend bool operator==(const Obstacle&, const Obstacle&) = default;
};

// Instantiated field geometry. Plant specs and coordinates already include
// the scale factor; `params` keeps the unscaled request.
struct FieldLayout {
  FieldParams params;
  std::vector<Plant> plants;
  std::vector<Obstacle> obstacles;
  std::vector<Segment> row_centerlines;
  std::vector<Segment> corridor_centerlines;
  // Lateral free gap (row centerline to row centerline) of each corridor.
  std::vector<double> corridor_widths;
  std::uint64_t seed = 0;

  friend bool operator==(const FieldLayout&, const FieldLayout&) = default;
};

// Names accepted by Preset(), in a fixed order.
const std::vector<std::string>& PresetNames();

// Field parameters for a named crop. The four measured crops reproduce their
// published geometry; "vineyard" is an implementer default. Throws
// Error(kUnknownPreset).
FieldParams Preset(std::string_view crop_name);

// Lateral gaps between consecutive rows: d_RR where the next row opens a new
// group, d_rr otherwise. Throws Error(kInvalidParams) if num_rows < 2.
std::vector<double> RowSpacingPattern(int num_rows, int rows_per_group,
                                      double d_rr, double d_RR);

int PlantsPerRow(double row_length, double d_pp);

// Deterministic in (params, seed).
FieldLayout GenerateField(const FieldParams& params, std::uint64_t seed);

// True if `point` lies inside the plant's ground footprint ellipse.
bool InsideFootprint(const Plant& plant, Vec2 point);

// Index of the widest corridor; ties go to the one nearest the field's
// lateral center, then to the lower index.
int DefaultCorridorIndex(const FieldLayout& layout);

}  // namespace rowcrop
