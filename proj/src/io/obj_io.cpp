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

#include "rowcrop/io/obj_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "rowcrop/error.hpp"
#include "rowcrop/mask_oracle.hpp"

namespace rowcrop::io {
namespace {

class ObjWriter {
 public:
  void Object(const std::string& name) { out_ += "o " + name + "\n"; }

  // Returns the one-based index of the new vertex.
  int Vertex(const Vec3& v) {
    char line[96];
    std::snprintf(line, sizeof(line), "v %.6f %.6f %.6f\n", v.x, v.y, v.z);
    out_ += line;
    return ++vertex_count_;
  }

  void Face(int a, int b, int c) {
    char line[64];
    std::snprintf(line, sizeof(line), "f %d %d %d\n", a, b, c);
    out_ += line;
  }

  std::string Take() { return std::move(out_); }

 private:
  std::string out_;
  int vertex_count_ = 0;
};

void WriteEllipsoid(ObjWriter& w, const Ellipsoid& e) {
  const int n = kSphereSegments;
  const auto at = [&](double phi, double theta) {
    return Vec3{e.center.x + e.semi_axes.x * std::sin(phi) * std::cos(theta),
                e.center.y + e.semi_axes.y * std::sin(phi) * std::sin(theta),
                e.center.z + e.semi_axes.z * std::cos(phi)};
  };
  const int top = w.Vertex({e.center.x, e.center.y, e.center.z + e.semi_axes.z});
  const int first_ring = top + 1;
  for (int k = 1; k < n; ++k) {
    const double phi = std::numbers::pi * k / n;
    for (int s = 0; s < n; ++s) w.Vertex(at(phi, 2.0 * std::numbers::pi * s / n));
  }
  const int bottom = w.Vertex({e.center.x, e.center.y, e.center.z - e.semi_axes.z});
  const auto ring = [&](int k, int s) { return first_ring + (k - 1) * n + s % n; };
  for (int s = 0; s < n; ++s) w.Face(top, ring(1, s), ring(1, s + 1));
  for (int k = 1; k < n - 1; ++k) {
    for (int s = 0; s < n; ++s) {
      w.Face(ring(k, s), ring(k + 1, s), ring(k + 1, s + 1));
      w.Face(ring(k, s), ring(k + 1, s + 1), ring(k, s + 1));
    }
  }
  for (int s = 0; s < n; ++s) w.Face(bottom, ring(n - 1, s + 1), ring(n - 1, s));
}

void WriteCylinder(ObjWriter& w, const Cylinder& c) {
  const int n = kCylinderSegments;
  const int base = w.Vertex({c.axis.x + c.radius, c.axis.y, c.z0});
  for (int s = 1; s < n; ++s) {
    const double theta = 2.0 * std::numbers::pi * s / n;
    w.Vertex({c.axis.x + c.radius * std::cos(theta),
              c.axis.y + c.radius * std::sin(theta), c.z0});
  }
  for (int s = 0; s < n; ++s) {
    const double theta = 2.0 * std::numbers::pi * s / n;
    w.Vertex({c.axis.x + c.radius * std::cos(theta),
              c.axis.y + c.radius * std::sin(theta), c.z1});
  }
  const int bottom_center = w.Vertex({c.axis.x, c.axis.y, c.z0});
  const int top_center = w.Vertex({c.axis.x, c.axis.y, c.z1});
  const auto lo = [&](int s) { return base + s % n; };
  const auto hi = [&](int s) { return base + n + s % n; };
  for (int s = 0; s < n; ++s) {
    w.Face(lo(s), lo(s + 1), hi(s + 1));
    w.Face(lo(s), hi(s + 1), hi(s));
  }
  for (int s = 0; s < n; ++s) w.Face(top_center, hi(s), hi(s + 1));
  for (int s = 0; s < n; ++s) w.Face(bottom_center, lo(s + 1), lo(s));
}

[[noreturn]] void Bad(int line, const std::string& why) {
  throw Error(ErrorCode::kReadError, "obj line " + std::to_string(line) + ": " + why);
}

std::vector<std::string_view> Tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::string TerrainObj(const Heightfield& terrain) {
  ObjWriter w;
  w.Object("terrain");
  const double res = terrain.resolution();
  for (int j = 0; j < terrain.ny(); ++j) {
    for (int i = 0; i < terrain.nx(); ++i) w.Vertex({i * res, j * res, terrain.vertex(i, j)});
  }
  const auto id = [&](int i, int j) { return j * terrain.nx() + i + 1; };
  for (int j = 0; j + 1 < terrain.ny(); ++j) {
    for (int i = 0; i + 1 < terrain.nx(); ++i) {
      w.Face(id(i, j), id(i + 1, j), id(i + 1, j + 1));
      w.Face(id(i, j), id(i + 1, j + 1), id(i, j + 1));
    }
  }
  return w.Take();
}

std::string PlantsObj(const FieldLayout& layout, const Heightfield& terrain) {
  ObjWriter w;
  char name[32];
  for (std::size_t i = 0; i < layout.plants.size(); ++i) {
    std::snprintf(name, sizeof(name), "plant_%06zu", i);
    w.Object(name);
    const PlantPrimitives prims = MakePlantPrimitives(layout.plants[i], terrain);
    WriteEllipsoid(w, prims.crown);
    if (prims.trunk) WriteCylinder(w, *prims.trunk);
  }
  return w.Take();
}

ObjMesh ParseObjStrict(std::string_view text) {
  ObjMesh mesh;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto tokens = Tokens(line);
    if (tokens.empty()) continue;
    const std::string_view tag = tokens[0];
    if (tag == "v") {
      if (tokens.size() != 4) Bad(line_no, "vertex needs exactly three coordinates");
      double xyz[3];
      for (int k = 0; k < 3; ++k) {
        const std::string_view t = tokens[k + 1];
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), xyz[k]);
        if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(xyz[k])) {
          Bad(line_no, "bad coordinate '" + std::string(t) + "'");
        }
      }
      mesh.vertices.push_back({xyz[0], xyz[1], xyz[2]});
    } else if (tag == "f") {
      if (tokens.size() < 4) Bad(line_no, "face needs at least three vertices");
      std::vector<int> face;
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        const std::string_view t = tokens[k];
        int index = 0;
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), index);
        if (ec != std::errc() || ptr != t.data() + t.size()) {
          Bad(line_no, "bad face index '" + std::string(t) + "'");
        }
        if (index < 1 || index > static_cast<int>(mesh.vertices.size())) {
          Bad(line_no, "face index out of range");
        }
        face.push_back(index - 1);
      }
      mesh.faces.push_back(std::move(face));
      if (!mesh.objects.empty()) ++mesh.objects.back().face_count;
    } else if (tag == "o") {
      if (tokens.size() != 2) Bad(line_no, "object needs exactly one name");
      mesh.objects.push_back(
          {std::string(tokens[1]), static_cast<int>(mesh.faces.size()), 0});
    } else {
      Bad(line_no, "unsupported statement '" + std::string(tag) + "'");
    }
  }
  return mesh;
}

}  // namespace rowcrop::io
