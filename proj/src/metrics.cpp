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

#include "rowcrop/metrics.hpp"

#include <cmath>
#include <limits>

#include "rowcrop/error.hpp"

namespace rowcrop {
namespace {

void RequireSameShape(const Mask& a, const Mask& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorCode::kShapeMismatch,
                std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                    " vs " + std::to_string(b.width()) + "x" +
                    std::to_string(b.height()));
  }
}

}  // namespace

double CrossTrackError(Vec2 position, const Segment& centerline) {
  const Vec2 dir = centerline.direction();
  const double len = Norm(dir);
  if (!(len > 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "degenerate centerline segment");
  }
  return Cross(dir, position - centerline.a) / len;
}

Vec2 GoalInBodyFrame(const PoseSample& pose, Vec2 goal) {
  const double dx = goal.x - pose.x;
  const double dy = goal.y - pose.y;
  const double c = std::cos(pose.yaw);
  const double s = std::sin(pose.yaw);
  return {c * dx + s * dy, -s * dx + c * dy};
}

ChaResult Cha(std::span<const PoseSample> trajectory, Vec2 goal) {
  ChaResult result;
  double sum = 0.0;
  for (const PoseSample& pose : trajectory) {
    const Vec2 body = GoalInBodyFrame(pose, goal);
    if (!(body.x > 0.0)) {
      ++result.excluded;
      continue;
    }
    sum += std::atan(body.y / body.x);
    ++result.used;
  }
  result.value = result.used > 0 ? sum / result.used
                                 : std::numeric_limits<double>::quiet_NaN();
  return result;
}

MetricsRecord TrajectoryMetrics(std::span<const PoseSample> trajectory,
                                std::span<const Command> commands,
                                const Segment& centerline, Vec2 goal) {
  if (trajectory.empty() || commands.empty()) {
    throw Error(ErrorCode::kInvalidParams, "trajectory and commands must be non-empty");
  }
  MetricsRecord m;
  const ChaResult cha = Cha(trajectory, goal);
  m.cha = cha.value;
  m.cha_excluded = cha.excluded;

  double abs_sum = 0.0;
  double sq_sum = 0.0;
  for (const PoseSample& pose : trajectory) {
    const double e = CrossTrackError({pose.x, pose.y}, centerline);
    abs_sum += std::abs(e);
    sq_sum += e * e;
  }
  const auto n = static_cast<double>(trajectory.size());
  m.mae = abs_sum / n;
  m.mse = sq_sum / n;

  double mean = 0.0;
  for (const Command& c : commands) mean += c.omega_z;
  mean /= static_cast<double>(commands.size());
  double var = 0.0;
  for (const Command& c : commands) var += (c.omega_z - mean) * (c.omega_z - mean);
  m.omega_std = std::sqrt(var / static_cast<double>(commands.size()));
  return m;
}

double Iou(const Mask& a, const Mask& b) {
  RequireSameShape(a, b);
  std::size_t inter = 0;
  std::size_t uni = 0;
  const auto& pa = a.pixels();
  const auto& pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    inter += pa[i] & pb[i];
    uni += pa[i] | pb[i];
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double SegLoss(std::span<const Mask> pred, std::span<const Mask> truth) {
  if (pred.empty() && truth.empty()) {
    throw Error(ErrorCode::kEmptyBatch, "segmentation loss over an empty batch");
  }
  if (pred.size() != truth.size()) {
    throw Error(ErrorCode::kShapeMismatch, "prediction and truth batch sizes differ");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) sum += 1.0 - Iou(pred[i], truth[i]);
  return sum / static_cast<double>(pred.size());
}

double PixelAccuracy(const Mask& a, const Mask& b) {
  RequireSameShape(a, b);
  if (a.empty()) return 1.0;
  std::size_t agree = 0;
  const auto& pa = a.pixels();
  const auto& pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) agree += pa[i] == pb[i];
  return static_cast<double>(agree) / static_cast<double>(pa.size());
}

}  // namespace rowcrop
