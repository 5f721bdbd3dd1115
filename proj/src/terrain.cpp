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

#include "rowcrop/terrain.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "rowcrop/error.hpp"
#include "rowcrop/rng.hpp"

namespace rowcrop {

void Validate(const TerrainSpec& spec) {
  if (!(spec.grid_resolution > 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "grid_resolution must be > 0");
  }
  if (!(spec.length > 0.0) || !(spec.width > 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "terrain length and width must be > 0");
  }
  if (!(spec.delta_h >= 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "delta_h must be >= 0");
  }
  if (!(std::abs(spec.slope) < 0.5)) {
    throw Error(ErrorCode::kInvalidParams, "|slope| must be < 0.5");
  }
  if (spec.length < spec.grid_resolution || spec.width < spec.grid_resolution) {
    throw Error(ErrorCode::kInvalidParams,
                "terrain must span at least one grid cell");
  }
}

int GridVertexCount(double extent, double resolution) {
  return static_cast<int>(std::floor(extent / resolution + 1e-9)) + 1;
}

Heightfield::Heightfield(TerrainSpec spec, int nx, int ny,
                         std::vector<double> heights, std::uint64_t seed)
    : spec_(spec), nx_(nx), ny_(ny), heights_(std::move(heights)), seed_(seed) {
  if (nx_ < 2 || ny_ < 2 ||
      heights_.size() != static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_)) {
    throw Error(ErrorCode::kInvalidParams, "heightfield grid must be at least 2x2");
  }
}

bool Heightfield::Contains(double x, double y) const {
  return x >= 0.0 && y >= 0.0 && x <= x_extent() && y <= y_extent();
}

Heightfield::Cell Heightfield::Locate(double x, double y) const {
  if (!Contains(x, y)) {
    throw Error(ErrorCode::kOutOfBounds,
                "query (" + std::to_string(x) + ", " + std::to_string(y) +
                    ") outside terrain");
  }
  const double res = spec_.grid_resolution;
  const double gx = x / res;
  const double gy = y / res;
  const int i = std::clamp(static_cast<int>(std::floor(gx)), 0, nx_ - 2);
  const int j = std::clamp(static_cast<int>(std::floor(gy)), 0, ny_ - 2);
  return {i, j, gx - i, gy - j};
}

double Heightfield::HeightAt(double x, double y) const {
  const Cell c = Locate(x, y);
  const double h00 = vertex(c.i, c.j);
  const double h10 = vertex(c.i + 1, c.j);
  const double h01 = vertex(c.i, c.j + 1);
  const double h11 = vertex(c.i + 1, c.j + 1);
  const double lower = (1.0 - c.fx) * h00 + c.fx * h10;
  const double upper = (1.0 - c.fx) * h01 + c.fx * h11;
  return (1.0 - c.fy) * lower + c.fy * upper;
}

Vec2 Heightfield::GradientAt(double x, double y) const {
  const Cell c = Locate(x, y);
  const double h00 = vertex(c.i, c.j);
  const double h10 = vertex(c.i + 1, c.j);
  const double h01 = vertex(c.i, c.j + 1);
  const double h11 = vertex(c.i + 1, c.j + 1);
  const double res = spec_.grid_resolution;
  return {((1.0 - c.fy) * (h10 - h00) + c.fy * (h11 - h01)) / res,
          ((1.0 - c.fx) * (h01 - h00) + c.fx * (h11 - h10)) / res};
}

Heightfield GenerateHeightfield(const TerrainSpec& spec, std::uint64_t seed) {
  Validate(spec);
  const int nx = GridVertexCount(spec.length, spec.grid_resolution);
  const int ny = GridVertexCount(spec.width, spec.grid_resolution);
  std::vector<double> heights(static_cast<std::size_t>(nx) *
                              static_cast<std::size_t>(ny));
  Rng rng(seed);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double noise = (rng.Uniform() - 0.5) * spec.delta_h;
      heights[static_cast<std::size_t>(j) * nx + i] =
          spec.slope * (i * spec.grid_resolution) + noise;
    }
  }
  return Heightfield(spec, nx, ny, std::move(heights), seed);
}

}  // namespace rowcrop
