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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rowcrop/camera.hpp"
#include "rowcrop/controller.hpp"
#include "rowcrop/field.hpp"
#include "rowcrop/mask_oracle.hpp"
#include "rowcrop/metrics.hpp"
#include "rowcrop/rng.hpp"
#include "rowcrop/terrain.hpp"

namespace rowcrop {

struct RoverState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;  // terrain height under (x, y)
  double yaw = 0.0;
  double t = 0.0;

  friend bool operator==(const RoverState&, const RoverState&) = default;
};

struct EpisodeConfig {
  FieldParams field;
  std::uint64_t seed = kDefaultSeed;
  // Unset selects DefaultCorridorIndex() of the generated layout.
  std::optional<int> corridor_index;
  double path_length = 20.0;
  double dt = 0.05;
  double control_period = 0.1;
  double goal_radius = 0.5;
  double timeout = 120.0;
  double rover_radius = 0.30;
  double drift_sigma = 0.3;  // yaw-rate noise std per unit terrain gradient
  // Stones are driven over. While the rover disc overlaps one, this much is
  // added to the terrain gradient magnitude that scales the drift noise.
  double obstacle_gradient = 1.0;
  CorruptionParams corruption;
  double start_lateral_offset = 0.0;  // positive to the left of travel
  double start_yaw_offset = 0.0;
  ControllerConfig controller;
  // Intrinsics and range; the pose follows the rover.
  CameraModel camera;
  double camera_height = kDefaultCameraMountHeight;
  // Drop every plant and obstacle after generation.
  bool clear_plants = false;

  friend bool operator==(const EpisodeConfig&, const EpisodeConfig&) = default;
};

void Validate(const EpisodeConfig& cfg);

enum class Outcome { kGoalReached, kCollision, kBlocked, kTimeout };

std::string_view OutcomeName(Outcome outcome);
Outcome ParseOutcome(std::string_view name);

struct EpisodeReport {
  std::vector<PoseSample> trajectory;  // one per control tick
  std::vector<Command> commands;       // aligned with trajectory
  Outcome outcome = Outcome::kTimeout;
  std::string detail;
  MetricsRecord metrics;
  std::uint64_t seed = 0;
  EpisodeConfig config;
  int corridor_index = 0;
  Segment centerline;
  Vec2 goal;
  RoverState final_state;
  double final_cross_track = 0.0;
  int no_passage_frames = 0;  // total frames without a free cluster
  int obstacle_contacts = 0;  // times the rover rolled onto a stone
  int physics_steps = 0;

  friend bool operator==(const EpisodeReport&, const EpisodeReport&) = default;
};

// Explicit Euler unicycle step. Yaw rate gets zero-mean normal noise with
// std drift_sigma * (|terrain gradient| + extra_gradient), drawn from `noise`.
// Throws Error(kOutOfBounds) if the rover leaves the terrain.
RoverState Step(const RoverState& state, const Command& cmd, double dt,
                const Heightfield& terrain, double drift_sigma, Rng& noise,
                double extra_gradient = 0.0);

// True if the ellipse with semi-axes (a, b) centered at the origin comes
// within `radius` of `point` (or contains it).
bool DiscIntersectsEllipse(Vec2 point, double radius, double a, double b);

bool TouchesPlant(const RoverState& state, const FieldLayout& layout,
                  double rover_radius);
bool TouchesObstacle(const RoverState& state, const FieldLayout& layout,
                     double rover_radius);

// True iff the rover disc touches any plant footprint or obstacle.
bool CheckCollision(const RoverState& state, const FieldLayout& layout,
                    double rover_radius);

// One closed-loop episode along a corridor. Deterministic in cfg. Plant
// contact or leaving the terrain ends the episode as a collision; stones only
// disturb the heading.
// Field layout and terrain exactly as an episode with this master seed sees
// them.
struct World {
  FieldLayout layout;
  Heightfield terrain;
};
World GenerateWorld(const FieldParams& params, std::uint64_t seed);

EpisodeReport RunEpisode(const EpisodeConfig& cfg);

// Rover camera at the given state.
CameraModel RoverCamera(const CameraModel& intrinsics, const RoverState& state,
                        double mount_height);

}  // namespace rowcrop
