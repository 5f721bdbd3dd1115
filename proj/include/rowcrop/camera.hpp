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

#include <optional>

#include "rowcrop/geometry.hpp"

namespace rowcrop {

// Camera body frame is x forward, y left, z up. Orientation is applied as
// yaw about z, then pitch about the body y axis (positive looks down), then
// roll about the optical axis. Pixel u grows to the right, v downward.
struct CameraPose {
  Vec3 position;
  double yaw = 0.0;
  double pitch = 0.0;
  double roll = 0.0;

  friend bool operator==(const CameraPose&, const CameraPose&) = default;
};

struct CameraModel {
  int width_px = 640;
  int height_px = 480;
  double hfov = 1.211;  // radians
  CameraPose pose;
  double max_range = 15.0;

  friend bool operator==(const CameraModel&, const CameraModel&) = default;
};

inline constexpr double kDefaultCameraMountHeight = 0.40;

// Throws Error(kInvalidParams).
void Validate(const CameraModel& cam);

struct Pixel {
  double u = 0.0;
  double v = 0.0;
};

// Row-major 3x3 rotation, body to world.
struct Rotation {
  double m[3][3];

  Vec3 Apply(const Vec3& v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
  }
  Vec3 ApplyInverse(const Vec3& v) const {
    return {m[0][0] * v.x + m[1][0] * v.y + m[2][0] * v.z,
            m[0][1] * v.x + m[1][1] * v.y + m[2][1] * v.z,
            m[0][2] * v.x + m[1][2] * v.y + m[2][2] * v.z};
  }
  Vec3 column(int c) const { return {m[0][c], m[1][c], m[2][c]}; }
};

Rotation BodyToWorld(const CameraPose& pose);

// Focal length in pixels for square pixels.
double FocalLengthPx(const CameraModel& cam);

// Pinhole projection. Empty when the point is at or behind the camera plane
// or falls outside [0, width) x [0, height).
std::optional<Pixel> Project(const CameraModel& cam, const Vec3& point);

// Unnormalized world-frame direction of the ray through pixel center
// (col + 0.5, row + 0.5).
Vec3 PixelRay(const CameraModel& cam, const Rotation& rotation, int col, int row);

}  // namespace rowcrop
