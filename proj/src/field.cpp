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

#include "rowcrop/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rowcrop/error.hpp"
#include "rowcrop/rng.hpp"

namespace rowcrop {
namespace {

constexpr double kObstacleMinRadius = 0.05;
constexpr double kObstacleMaxRadius = 0.15;
constexpr double kJitterTruncation = 3.0;
constexpr int kObstacleAttempts = 1000;

void Require(bool condition, const std::string& message) {
  if (!condition) throw Error(ErrorCode::kInvalidParams, message);
}

FieldParams MakeParams(std::string name, double row_length, TerrainSpec terrain,
                       PlantSpec plant, double d_rr, double d_RR, double d_pp,
                       int rows, int rows_per_group) {
  FieldParams p;
  p.crop_name = std::move(name);
  p.row_length = row_length;
  p.terrain = terrain;
  p.plant = plant;
  p.d_rr = d_rr;
  p.d_RR = d_RR;
  p.d_pp = d_pp;
  p.num_rows = rows;
  p.rows_per_group = rows_per_group;
  return p;
}

struct Frame {
  double x0;
  double row_length;
  std::vector<double> row_y;
};

Frame LayOutRows(const FieldParams& params) {
  const TerrainSpec terrain = EffectiveTerrain(params);
  const double res = terrain.grid_resolution;
  const double x_ext = (GridVertexCount(terrain.length, res) - 1) * res;
  const double y_ext = (GridVertexCount(terrain.width, res) - 1) * res;
  const double s = params.scale;

  Frame frame;
  frame.row_length = params.row_length * s;
  Require(frame.row_length <= x_ext + 1e-9,
          "row_length exceeds terrain length");
  frame.x0 = std::max(0.0, (x_ext - frame.row_length) / 2.0);

  std::vector<double> gaps;
  if (params.num_rows >= 2) {
    gaps = RowSpacingPattern(params.num_rows, params.rows_per_group,
                             params.d_rr * s, params.d_RR * s);
  }
  const double extent = std::accumulate(gaps.begin(), gaps.end(), 0.0);
  // A single row still needs room for its corridor on the +y side.
  const double band = params.num_rows == 1 ? params.d_rr * s : extent;
  Require(band <= y_ext + 1e-9, "rows do not fit inside terrain width");
  double y = (y_ext - extent) / 2.0;
  frame.row_y.push_back(y);
  for (double gap : gaps) {
    y += gap;
    frame.row_y.push_back(y);
  }
  if (params.num_rows == 1) {
    Require(frame.row_y[0] + band <= y_ext + 1e-9,
            "single-row corridor falls outside terrain");
  }
  return frame;
}

}  // namespace

std::string_view PlantShapeName(PlantShape shape) {
  return shape == PlantShape::kTrunkCrown ? "TrunkCrown" : "Ellipsoid";
}

PlantShape ParsePlantShape(std::string_view name) {
  if (name == "Ellipsoid") return PlantShape::kEllipsoid;
  if (name == "TrunkCrown") return PlantShape::kTrunkCrown;
  throw Error(ErrorCode::kInvalidParams,
              "unknown plant shape '" + std::string(name) + "'");
}

void Validate(const PlantSpec& spec) {
  Require(spec.length > 0.0 && spec.width > 0.0 && spec.height > 0.0,
          "plant dimensions must be > 0");
  if (spec.shape == PlantShape::kTrunkCrown) {
    Require(spec.trunk_radius > 0.0 && spec.trunk_height > 0.0,
            "trunk dimensions must be > 0");
    Require(spec.trunk_height < spec.height, "trunk_height must be < height");
    Require(spec.trunk_radius < spec.width / 2.0,
            "trunk_radius must be < width / 2");
  }
}

PlantSpec Scaled(const PlantSpec& spec, double factor) {
  PlantSpec out = spec;
  out.length *= factor;
  out.width *= factor;
  out.height *= factor;
  out.trunk_radius *= factor;
  out.trunk_height *= factor;
  return out;
}

TerrainSpec EffectiveTerrain(const FieldParams& params) {
  TerrainSpec t = params.terrain;
  t.length *= params.scale;
  t.width *= params.scale;
  t.grid_resolution *= params.scale;
  return t;
}

void Validate(const FieldParams& params) {
  Require(params.d_rr > 0.0, "d_rr must be > 0");
  Require(params.d_RR >= params.d_rr, "d_RR must be >= d_rr");
  Require(params.d_pp > 0.0, "d_pp must be > 0");
  Require(params.row_length > 0.0, "row_length must be > 0");
  Require(params.num_rows >= 1, "num_rows must be >= 1");
  Require(params.rows_per_group >= 1, "rows_per_group must be >= 1");
  Require(params.scale > 0.0 && std::isfinite(params.scale), "scale must be > 0");
  Require(params.obstacle_density >= 0.0, "obstacle_density must be >= 0");
  Require(params.plant_jitter >= 0.0, "plant_jitter must be >= 0");
  Validate(params.plant);
  Require(params.plant.width < params.d_rr,
          "plant width must be smaller than d_rr");
  Validate(params.terrain);
  LayOutRows(params);
}

const std::vector<std::string>& PresetNames() {
  static const std::vector<std::string> kNames = {"zucchini", "lettuce", "chard",
                                                  "pear", "vineyard"};
  return kNames;
}

FieldParams Preset(std::string_view crop_name) {
  const auto ellipsoid = [](double l, double w, double h) {
    return PlantSpec{l, w, h, PlantShape::kEllipsoid, 0.0, 0.0};
  };
  const auto terrain = [](double l, double w, double dh) {
    return TerrainSpec{l, w, dh, 0.25, 0.0};
  };
  if (crop_name == "zucchini") {
    return MakeParams("zucchini", 60, terrain(60, 38, 0.2),
                      ellipsoid(0.82, 0.9, 0.6), 1.8, 3.6, 0.7, 7, 2);
  }
  if (crop_name == "lettuce") {
    return MakeParams("lettuce", 60, terrain(60, 25, 0.25),
                      ellipsoid(0.38, 0.34, 0.22), 0.7, 1.4, 0.4, 3, 2);
  }
  if (crop_name == "chard") {
    return MakeParams("chard", 60, terrain(60, 12, 0.25),
                      ellipsoid(0.25, 0.4, 0.25), 0.7, 1.4, 0.3, 3, 2);
  }
  if (crop_name == "pear") {
    return MakeParams("pear", 80, terrain(80, 45, 0.3),
                      PlantSpec{1.4, 2.2, 3.2, PlantShape::kTrunkCrown, 0.10, 0.8},
                      5, 5, 2.2, 1, 1);
  }
  if (crop_name == "vineyard") {
    // Not a measured crop: implementer defaults.
    return MakeParams("vineyard", 60, terrain(60, 20, 0.2),
                      PlantSpec{0.8, 0.8, 2.0, PlantShape::kTrunkCrown, 0.06, 0.7},
                      2.5, 2.5, 1.2, 4, 1);
  }
  throw Error(ErrorCode::kUnknownPreset,
              "no preset named '" + std::string(crop_name) + "'");
}

std::vector<double> RowSpacingPattern(int num_rows, int rows_per_group,
                                      double d_rr, double d_RR) {
  Require(num_rows >= 2, "row spacing needs at least two rows");
  Require(rows_per_group >= 1, "rows_per_group must be >= 1");
  std::vector<double> gaps;
  gaps.reserve(static_cast<std::size_t>(num_rows - 1));
  for (int next = 1; next < num_rows; ++next) {
    gaps.push_back(next % rows_per_group == 0 ? d_RR : d_rr);
  }
  return gaps;
}

int PlantsPerRow(double row_length, double d_pp) {
  return static_cast<int>(std::floor(row_length / d_pp + 1e-9)) + 1;
}

bool InsideFootprint(const Plant& plant, Vec2 point) {
  const double dx = (point.x - plant.position.x) / (plant.spec.length / 2.0);
  const double dy = (point.y - plant.position.y) / (plant.spec.width / 2.0);
  return dx * dx + dy * dy <= 1.0;
}

FieldLayout GenerateField(const FieldParams& params, std::uint64_t seed) {
  Validate(params);
  const Frame frame = LayOutRows(params);
  const TerrainSpec terrain = EffectiveTerrain(params);
  const double res = terrain.grid_resolution;
  const double x_ext = (GridVertexCount(terrain.length, res) - 1) * res;
  const double y_ext = (GridVertexCount(terrain.width, res) - 1) * res;
  const double s = params.scale;
  const double d_pp = params.d_pp * s;
  const double jitter = params.plant_jitter * s;
  const PlantSpec spec = Scaled(params.plant, s);

  FieldLayout layout;
  layout.params = params;
  layout.seed = seed;
  Rng rng(seed);

  const int per_row = PlantsPerRow(frame.row_length, d_pp);
  layout.plants.reserve(static_cast<std::size_t>(per_row) * frame.row_y.size());
  for (double row_y : frame.row_y) {
    layout.row_centerlines.push_back(
        {{frame.x0, row_y}, {frame.x0 + frame.row_length, row_y}});
    for (int k = 0; k < per_row; ++k) {
      Vec2 p{frame.x0 + k * d_pp, row_y};
      if (jitter > 0.0) {
        p.x += jitter * rng.TruncatedNormal(kJitterTruncation);
        p.y += jitter * rng.TruncatedNormal(kJitterTruncation);
        p.x = std::clamp(p.x, 0.0, x_ext);
        p.y = std::clamp(p.y, 0.0, y_ext);
      }
      layout.plants.push_back({p, spec});
    }
  }

  // Corridor strips as [y_lo, y_hi].
  std::vector<std::pair<double, double>> strips;
  if (frame.row_y.size() == 1) {
    const double w = params.d_rr * s;
    strips.emplace_back(frame.row_y[0], frame.row_y[0] + w);
  } else {
    for (std::size_t k = 0; k + 1 < frame.row_y.size(); ++k) {
      strips.emplace_back(frame.row_y[k], frame.row_y[k + 1]);
    }
  }
  double total_width = 0.0;
  for (const auto& [lo, hi] : strips) {
    const double mid = (lo + hi) / 2.0;
    layout.corridor_centerlines.push_back(
        {{frame.x0, mid}, {frame.x0 + frame.row_length, mid}});
    layout.corridor_widths.push_back(hi - lo);
    total_width += hi - lo;
  }

  const auto count = static_cast<int>(
      std::lround(params.obstacle_density * total_width * frame.row_length));
  for (int n = 0; n < count; ++n) {
    for (int attempt = 0; attempt < kObstacleAttempts; ++attempt) {
      double pick = rng.Uniform() * total_width;
      std::size_t c = 0;
      while (c + 1 < strips.size() && pick >= strips[c].second - strips[c].first) {
        pick -= strips[c].second - strips[c].first;
        ++c;
      }
      const Vec2 center{rng.Uniform(frame.x0, frame.x0 + frame.row_length),
                        rng.Uniform(strips[c].first, strips[c].second)};
      const double radius = rng.Uniform(kObstacleMinRadius, kObstacleMaxRadius);
      const bool blocked = std::any_of(
          layout.plants.begin(), layout.plants.end(),
          [&](const Plant& plant) { return InsideFootprint(plant, center); });
      if (!blocked) {
        layout.obstacles.push_back({center, radius});
        break;
      }
    }
  }
  return layout;
}

int DefaultCorridorIndex(const FieldLayout& layout) {
  if (layout.corridor_centerlines.empty()) {
    throw Error(ErrorCode::kInvalidParams, "layout has no corridors");
  }
  const TerrainSpec terrain = EffectiveTerrain(layout.params);
  const double res = terrain.grid_resolution;
  const double center = (GridVertexCount(terrain.width, res) - 1) * res / 2.0;
  int best = 0;
  for (int i = 1; i < static_cast<int>(layout.corridor_widths.size()); ++i) {
    const double w = layout.corridor_widths[i];
    const double best_w = layout.corridor_widths[best];
    if (w > best_w + 1e-9) {
      best = i;
    } else if (std::abs(w - best_w) <= 1e-9) {
      const double off = std::abs(layout.corridor_centerlines[i].a.y - center);
      const double best_off =
          std::abs(layout.corridor_centerlines[best].a.y - center);
      if (off < best_off - 1e-9) best = i;
    }
  }
  return best;
}

}  // namespace rowcrop
