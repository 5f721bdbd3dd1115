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

#include "rowcrop/camera.hpp"

#include <cmath>
#include <numbers>

#include "rowcrop/error.hpp"

namespace rowcrop {

void Validate(const CameraModel& cam) {
  if (cam.width_px < 1 || cam.height_px < 1) {
    throw Error(ErrorCode::kInvalidParams, "camera image must be at least 1x1");
  }
  if (!(cam.hfov > 0.0 && cam.hfov < std::numbers::pi)) {
    throw Error(ErrorCode::kInvalidParams, "hfov must lie in (0, pi)");
  }
  if (!(cam.max_range > 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "max_range must be > 0");
  }
}

Rotation BodyToWorld(const CameraPose& pose) {
  const double cy = std::cos(pose.yaw), sy = std::sin(pose.yaw);
  const double cp = std::cos(pose.pitch), sp = std::sin(pose.pitch);
  const double cr = std::cos(pose.roll), sr = std::sin(pose.roll);
  // Rz(yaw) * Ry(pitch) * Rx(roll)
  return Rotation{{{cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr},
                   {sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr},
                   {-sp, cp * sr, cp * cr}}};
}

double FocalLengthPx(const CameraModel& cam) {
  return (cam.width_px / 2.0) / std::tan(cam.hfov / 2.0);
}

std::optional<Pixel> Project(const CameraModel& cam, const Vec3& point) {
  const Rotation r = BodyToWorld(cam.pose);
  const Vec3 body = r.ApplyInverse(point - cam.pose.position);
  if (!(body.x > 0.0)) return std::nullopt;
  const double f = FocalLengthPx(cam);
  const double u = cam.width_px / 2.0 - f * body.y / body.x;
  const double v = cam.height_px / 2.0 - f * body.z / body.x;
  if (!(u >= 0.0 && u < cam.width_px && v >= 0.0 && v < cam.height_px)) {
    return std::nullopt;
  }
  return Pixel{u, v};
}

Vec3 PixelRay(const CameraModel& cam, const Rotation& rotation, int col, int row) {
  const double f = FocalLengthPx(cam);
  const double du = (col + 0.5) - cam.width_px / 2.0;
  const double dv = (row + 0.5) - cam.height_px / 2.0;
  return rotation.Apply({f, -du, -dv});
}

}  // namespace rowcrop
