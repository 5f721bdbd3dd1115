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
#include <span>
#include <vector>

#include "rowcrop/geometry.hpp"

namespace rowcrop {

// Rectangular terrain patch. `delta_h` bounds the peak-to-peak random
// displacement; `slope` adds a deterministic rise along +x.
struct TerrainSpec {
  double length = 60.0;
  double width = 38.0;
  double delta_h = 0.2;
  double grid_resolution = 0.25;
  double slope = 0.0;

  friend bool operator==(const TerrainSpec&, const TerrainSpec&) = default;
};

// Throws Error(kInvalidParams) on violation.
void Validate(const TerrainSpec& spec);

// Vertex count along an axis of the given extent.
int GridVertexCount(double extent, double resolution);

// Gridded elevation, immutable after construction. Vertex (i, j) sits at
// (i * res, j * res); i runs along x (row direction), j along y.
class Heightfield {
 public:
  Heightfield(TerrainSpec spec, int nx, int ny, std::vector<double> heights,
              std::uint64_t seed);

  const TerrainSpec& spec() const { return spec_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::uint64_t seed() const { return seed_; }
  double resolution() const { return spec_.grid_resolution; }
  double x_extent() const { return (nx_ - 1) * spec_.grid_resolution; }
  double y_extent() const { return (ny_ - 1) * spec_.grid_resolution; }

  double vertex(int i, int j) const { return heights_[Index(i, j)]; }
  std::span<const double> heights() const { return heights_; }

  bool Contains(double x, double y) const;

  // Bilinear interpolation of the four surrounding vertices. Throws
  // Error(kOutOfBounds) outside the grid.
  double HeightAt(double x, double y) const;

  // Analytic gradient of the bilinear patch containing (x, y).
  Vec2 GradientAt(double x, double y) const;

  friend bool operator==(const Heightfield&, const Heightfield&) = default;

 private:
  struct Cell {
    int i;
    int j;
    double fx;
    double fy;
  };

  std::size_t Index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) +
           static_cast<std::size_t>(i);
  }
  Cell Locate(double x, double y) const;

  TerrainSpec spec_;
  int nx_;
  int ny_;
  std::vector<double> heights_;
  std::uint64_t seed_;
};

// Each vertex gets slope * x + u with u uniform in [-delta_h/2, +delta_h/2].
Heightfield GenerateHeightfield(const TerrainSpec& spec, std::uint64_t seed);

}  // namespace rowcrop
