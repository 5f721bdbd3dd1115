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

#include "rowcrop/mask_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "rowcrop/error.hpp"
#include "rowcrop/rng.hpp"

namespace rowcrop {
namespace {

constexpr double kNearPlane = 1e-9;

struct Box {
  Vec3 lo;
  Vec3 hi;
};

Box Bounds(const Ellipsoid& e) {
  return {e.center - e.semi_axes, e.center + e.semi_axes};
}

Box Bounds(const Cylinder& c) {
  return {{c.axis.x - c.radius, c.axis.y - c.radius, c.z0},
          {c.axis.x + c.radius, c.axis.y + c.radius, c.z1}};
}

double DistanceToBox(const Vec3& p, const Box& b) {
  const double dx = std::max({b.lo.x - p.x, 0.0, p.x - b.hi.x});
  const double dy = std::max({b.lo.y - p.y, 0.0, p.y - b.hi.y});
  const double dz = std::max({b.lo.z - p.z, 0.0, p.z - b.hi.z});
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double FarthestCornerDistance(const Vec3& p, const Box& b) {
  const double dx = std::max(std::abs(b.lo.x - p.x), std::abs(b.hi.x - p.x));
  const double dy = std::max(std::abs(b.lo.y - p.y), std::abs(b.hi.y - p.y));
  const double dz = std::max(std::abs(b.lo.z - p.z), std::abs(b.hi.z - p.z));
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Per-frame constants shared by all primitives.
struct View {
  const CameraModel* cam;
  Rotation rotation;
  double focal;
  double cx;
  double cy;
};

// Conservative pixel window of a box, clipped to the image. `in_front` is
// false when no part of the box lies ahead of the camera plane.
struct Window {
  int col0 = 0;
  int col1 = -1;
  int row0 = 0;
  int row1 = -1;
  bool fully_in_front = false;
  bool empty() const { return col1 < col0 || row1 < row0; }
};

Window ProjectBox(const View& view, const Box& box) {
  std::array<Vec3, 8> body;
  int k = 0;
  for (int ix = 0; ix < 2; ++ix) {
    for (int iy = 0; iy < 2; ++iy) {
      for (int iz = 0; iz < 2; ++iz) {
        const Vec3 corner{ix ? box.hi.x : box.lo.x, iy ? box.hi.y : box.lo.y,
                          iz ? box.hi.z : box.lo.z};
        body[k++] = view.rotation.ApplyInverse(corner - view.cam->pose.position);
      }
    }
  }
  double umin = std::numeric_limits<double>::infinity();
  double umax = -umin;
  double vmin = umin;
  double vmax = -umin;
  bool any = false;
  bool all_front = true;
  const auto add = [&](const Vec3& p) {
    const double u = view.cx - view.focal * p.y / p.x;
    const double v = view.cy - view.focal * p.z / p.x;
    umin = std::min(umin, u);
    umax = std::max(umax, u);
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
    any = true;
  };
  for (const Vec3& p : body) {
    if (p.x >= kNearPlane) {
      add(p);
    } else {
      all_front = false;
    }
  }
  if (!all_front) {
    // Box edges differ in exactly one corner-index bit.
    for (int a = 0; a < 8; ++a) {
      for (int bit = 1; bit < 8; bit <<= 1) {
        const int b = a | bit;
        if (b == a) continue;
        const Vec3& p = body[a];
        const Vec3& q = body[b];
        if ((p.x >= kNearPlane) == (q.x >= kNearPlane)) continue;
        const double t = (kNearPlane - p.x) / (q.x - p.x);
        add({kNearPlane, p.y + t * (q.y - p.y), p.z + t * (q.z - p.z)});
      }
    }
  }
  Window w;
  if (!any) return w;
  w.fully_in_front = all_front;
  const int width = view.cam->width_px;
  const int height = view.cam->height_px;
  // Pixel centers sit at col + 0.5.
  const double c0 = std::max(std::floor(umin - 0.5), -1.0);
  const double c1 = std::min(std::ceil(umax - 0.5), static_cast<double>(width));
  const double r0 = std::max(std::floor(vmin - 0.5), -1.0);
  const double r1 = std::min(std::ceil(vmax - 0.5), static_cast<double>(height));
  w.col0 = std::max(static_cast<int>(c0), 0);
  w.col1 = std::min(static_cast<int>(c1), width - 1);
  w.row0 = std::max(static_cast<int>(r0), 0);
  w.row1 = std::min(static_cast<int>(r1), height - 1);
  return w;
}

void RenderCylinder(const View& view, const Cylinder& c, Mask& mask) {
  const Box box = Bounds(c);
  const Vec3& origin = view.cam->pose.position;
  if (DistanceToBox(origin, box) > view.cam->max_range) return;
  const Window w = ProjectBox(view, box);
  if (w.empty()) return;
  for (int row = w.row0; row <= w.row1; ++row) {
    std::uint8_t* out = mask.row(row);
    for (int col = w.col0; col <= w.col1; ++col) {
      if (out[col]) continue;
      const Vec3 dir = PixelRay(*view.cam, view.rotation, col, row);
      if (RayHitsCylinder(origin, dir, c, view.cam->max_range)) out[col] = 1;
    }
  }
}

// The silhouette of an ellipsoid meets each scanline in one interval. Its
// ends come from a quadratic in the column offset; interior pixels of plants
// that lie wholly in front of the camera and inside max_range are filled
// directly and only the boundary pixels are ray tested.
void RenderEllipsoid(const View& view, const Ellipsoid& e, Mask& mask) {
  const Box box = Bounds(e);
  const CameraModel& cam = *view.cam;
  const Vec3& origin = cam.pose.position;
  if (DistanceToBox(origin, box) > cam.max_range) return;
  const Window w = ProjectBox(view, box);
  if (w.empty()) return;
  const bool simple = w.fully_in_front &&
                      FarthestCornerDistance(origin, box) <= cam.max_range;

  const Vec3 inv{1.0 / e.semi_axes.x, 1.0 / e.semi_axes.y, 1.0 / e.semi_axes.z};
  const auto to_unit = [&](const Vec3& v) {
    return Vec3{v.x * inv.x, v.y * inv.y, v.z * inv.z};
  };
  const Vec3 o = to_unit(origin - e.center);
  const double c = Dot(o, o) - 1.0;
  // Direction per unit column offset, and at the principal column.
  const Vec3 q = to_unit(-1.0 * view.rotation.column(1));
  const Vec3 fwd = view.focal * view.rotation.column(0);
  const Vec3 up = view.rotation.column(2);
  const double bq = Dot(o, q);
  const double qq = Dot(q, q);
  const double alpha = bq * bq - c * qq;

  const auto test = [&](int col, int row) {
    return RayHitsEllipsoid(origin, PixelRay(cam, view.rotation, col, row), e,
                            cam.max_range);
  };

  for (int row = w.row0; row <= w.row1; ++row) {
    std::uint8_t* out = mask.row(row);
    const double dv = (row + 0.5) - view.cy;
    const Vec3 p = to_unit(fwd - dv * up);
    const double bp = Dot(o, p);
    const double pp = Dot(p, p);
    const double pq = Dot(p, q);
    const double beta = bp * bq - c * pq;
    const double gamma = bp * bp - c * pp;

    int first = w.col0;
    int last = w.col1;
    if (c > 0.0 && alpha < 0.0) {
      const double disc = beta * beta - alpha * gamma;
      if (disc < 0.0) continue;
      const double root = std::sqrt(disc);
      const double lo = (-beta + root) / alpha + view.cx - 0.5;
      const double hi = (-beta - root) / alpha + view.cx - 0.5;
      first = std::max(w.col0, static_cast<int>(std::ceil(lo)) - 1);
      last = std::min(w.col1, static_cast<int>(std::floor(hi)) + 1);
      if (first > last) continue;
      if (simple && last - first >= 4) {
        std::fill(out + first + 2, out + last - 1, std::uint8_t{1});
        for (int col : {first, first + 1, last - 1, last}) {
          if (!out[col] && test(col, row)) out[col] = 1;
        }
        continue;
      }
    }
    for (int col = first; col <= last; ++col) {
      if (!out[col] && test(col, row)) out[col] = 1;
    }
  }
}

}  // namespace

bool RayHitsEllipsoid(const Vec3& origin, const Vec3& dir, const Ellipsoid& e,
                      double max_range) {
  const Vec3 o{(origin.x - e.center.x) / e.semi_axes.x,
               (origin.y - e.center.y) / e.semi_axes.y,
               (origin.z - e.center.z) / e.semi_axes.z};
  const Vec3 d{dir.x / e.semi_axes.x, dir.y / e.semi_axes.y,
               dir.z / e.semi_axes.z};
  const double c = Dot(o, o) - 1.0;
  if (c <= 0.0) return true;
  const double a = Dot(d, d);
  const double b = Dot(o, d);
  const double disc = b * b - a * c;
  if (disc < 0.0 || a <= 0.0) return false;
  const double t = (-b - std::sqrt(disc)) / a;
  if (t < 0.0) return false;
  return t * Norm(dir) <= max_range;
}

bool RayHitsCylinder(const Vec3& origin, const Vec3& dir, const Cylinder& c,
                     double max_range) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const double ox = origin.x - c.axis.x;
  const double oy = origin.y - c.axis.y;
  const double a = dir.x * dir.x + dir.y * dir.y;
  const double b = ox * dir.x + oy * dir.y;
  const double k = ox * ox + oy * oy - c.radius * c.radius;
  double lo = 0.0;
  double hi = kInf;
  if (a <= 0.0) {
    if (k > 0.0) return false;
  } else {
    const double disc = b * b - a * k;
    if (disc < 0.0) return false;
    const double root = std::sqrt(disc);
    lo = std::max(lo, (-b - root) / a);
    hi = std::min(hi, (-b + root) / a);
  }
  if (dir.z == 0.0) {
    if (origin.z < c.z0 || origin.z > c.z1) return false;
  } else {
    double ta = (c.z0 - origin.z) / dir.z;
    double tb = (c.z1 - origin.z) / dir.z;
    if (ta > tb) std::swap(ta, tb);
    lo = std::max(lo, ta);
    hi = std::min(hi, tb);
  }
  if (lo > hi) return false;
  return lo * Norm(dir) <= max_range;
}

PlantPrimitives MakePlantPrimitives(const Plant& plant, const Heightfield& terrain) {
  const PlantSpec& s = plant.spec;
  const double ground = terrain.HeightAt(plant.position.x, plant.position.y);
  PlantPrimitives out;
  if (s.shape == PlantShape::kEllipsoid) {
    out.crown = {{plant.position.x, plant.position.y, ground + s.height / 2.0},
                 {s.length / 2.0, s.width / 2.0, s.height / 2.0}};
  } else {
    const double crown = s.height - s.trunk_height;
    out.crown = {{plant.position.x, plant.position.y,
                  ground + s.trunk_height + crown / 2.0},
                 {s.length / 2.0, s.width / 2.0, crown / 2.0}};
    out.trunk = Cylinder{plant.position, ground, ground + s.trunk_height,
                         s.trunk_radius};
  }
  return out;
}

Scene::Scene(const FieldLayout& layout, const Heightfield& terrain)
    : terrain_(&terrain) {
  for (const Plant& plant : layout.plants) {
    PlantPrimitives prims = MakePlantPrimitives(plant, terrain);
    ellipsoids_.push_back(prims.crown);
    if (prims.trunk) cylinders_.push_back(*prims.trunk);
  }
}

Mask RenderMask(const CameraModel& cam, const Scene& scene) {
  Validate(cam);
  const Vec3& p = cam.pose.position;
  const Heightfield& terrain = scene.terrain();
  if (terrain.Contains(p.x, p.y) && p.z <= terrain.HeightAt(p.x, p.y)) {
    throw Error(ErrorCode::kInvalidPose, "camera at or below terrain surface");
  }
  View view{&cam, BodyToWorld(cam.pose), FocalLengthPx(cam), cam.width_px / 2.0,
            cam.height_px / 2.0};
  Mask mask(cam.width_px, cam.height_px);
  for (const Ellipsoid& e : scene.ellipsoids()) RenderEllipsoid(view, e, mask);
  for (const Cylinder& c : scene.cylinders()) RenderCylinder(view, c, mask);
  return mask;
}

Mask RenderMask(const CameraModel& cam, const FieldLayout& layout,
                const Heightfield& terrain) {
  return RenderMask(cam, Scene(layout, terrain));
}

void Validate(const CorruptionParams& params) {
  if (!(params.flip_prob >= 0.0 && params.flip_prob <= 1.0)) {
    throw Error(ErrorCode::kInvalidParams, "flip_prob must lie in [0, 1]");
  }
  if (params.dilate_px < 0 || params.erode_px < 0 || params.dropout_blocks < 0 ||
      params.dropout_size_px < 0) {
    throw Error(ErrorCode::kInvalidParams, "corruption pixel counts must be >= 0");
  }
}

namespace {

// Separable square-window filter. `want_any` selects dilation (any one in the
// window) versus erosion (all ones among in-image pixels).
Mask WindowFilter(const Mask& mask, int radius, bool want_any) {
  if (radius <= 0 || mask.empty()) return mask;
  const int w = mask.width();
  const int h = mask.height();
  const auto decide = [&](int ones, int count) {
    return static_cast<std::uint8_t>(want_any ? ones > 0 : ones == count);
  };
  Mask horizontal(w, h);
  std::vector<int> prefix(static_cast<std::size_t>(std::max(w, h)) + 1);
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* in = mask.row(y);
    for (int x = 0; x < w; ++x) prefix[x + 1] = prefix[x] + in[x];
    std::uint8_t* out = horizontal.row(y);
    for (int x = 0; x < w; ++x) {
      const int a = std::max(0, x - radius);
      const int b = std::min(w - 1, x + radius);
      out[x] = decide(prefix[b + 1] - prefix[a], b - a + 1);
    }
  }
  Mask result(w, h);
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) prefix[y + 1] = prefix[y] + horizontal.at(x, y);
    for (int y = 0; y < h; ++y) {
      const int a = std::max(0, y - radius);
      const int b = std::min(h - 1, y + radius);
      result.set(x, y, decide(prefix[b + 1] - prefix[a], b - a + 1));
    }
  }
  return result;
}

}  // namespace

Mask Dilate(const Mask& mask, int radius) { return WindowFilter(mask, radius, true); }

Mask Erode(const Mask& mask, int radius) { return WindowFilter(mask, radius, false); }

Mask CorruptMask(const Mask& mask, const CorruptionParams& params,
                 std::uint64_t seed) {
  Validate(params);
  Rng rng(seed);
  Mask out = mask;
  if (params.flip_prob > 0.0) {
    for (auto& p : out.pixels()) {
      if (rng.Uniform() < params.flip_prob) p ^= 1;
    }
  }
  out = Erode(Dilate(out, params.dilate_px), params.erode_px);
  const int size = params.dropout_size_px;
  if (size > 0 && !out.empty()) {
    for (int b = 0; b < params.dropout_blocks; ++b) {
      const int x0 = static_cast<int>(
          rng.UniformIndex(static_cast<std::uint64_t>(std::max(1, out.width() - size + 1))));
      const int y0 = static_cast<int>(
          rng.UniformIndex(static_cast<std::uint64_t>(std::max(1, out.height() - size + 1))));
      for (int y = y0; y < std::min(out.height(), y0 + size); ++y) {
        std::fill(out.row(y) + x0, out.row(y) + std::min(out.width(), x0 + size),
                  std::uint8_t{0});
      }
    }
  }
  return out;
}

}  // namespace rowcrop
