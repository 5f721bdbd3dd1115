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

#include <span>
#include <string>

#include "rowcrop/controller.hpp"
#include "rowcrop/geometry.hpp"
#include "rowcrop/mask.hpp"

namespace rowcrop {

struct PoseSample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;

  friend bool operator==(const PoseSample&, const PoseSample&) = default;
};

// Signed distance from `position` to the infinite line through `centerline`,
// positive on the left of its direction. Throws Error(kInvalidParams) for a
// degenerate segment.
double CrossTrackError(Vec2 position, const Segment& centerline);

// Goal position in the body frame of `pose` (x forward, y left).
Vec2 GoalInBodyFrame(const PoseSample& pose, Vec2 goal);

// Cumulative heading average: mean of arctan(y_i / x_i) over samples whose
// body-frame goal has x_i > 0. Samples with the goal at or behind the rover
// are excluded and counted; `value` is NaN when none remain.
struct ChaResult {
  double value = 0.0;
  int excluded = 0;
  int used = 0;
};
ChaResult Cha(std::span<const PoseSample> trajectory, Vec2 goal);

struct MetricsRecord {
  double cha = 0.0;       // rad
  int cha_excluded = 0;   // samples with goal behind
  double mae = 0.0;       // m
  double mse = 0.0;       // m^2
  double omega_std = 0.0; // rad/s, population std of commanded omega
  std::string outcome;

  friend bool operator==(const MetricsRecord&, const MetricsRecord&) = default;
};

// Throws Error(kInvalidParams) when either sequence is empty.
MetricsRecord TrajectoryMetrics(std::span<const PoseSample> trajectory,
                                std::span<const Command> commands,
                                const Segment& centerline, Vec2 goal);

// |a & b| / |a | b| over plant pixels; 1 when both are empty.
double Iou(const Mask& a, const Mask& b);

// Mean of (1 - IoU) over the batch.
double SegLoss(std::span<const Mask> pred, std::span<const Mask> truth);

// Fraction of pixels where the masks agree.
double PixelAccuracy(const Mask& a, const Mask& b);

}  // namespace rowcrop
