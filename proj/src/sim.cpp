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

#include "rowcrop/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rowcrop/error.hpp"

namespace rowcrop {
namespace {

// Parameter t of the closest ellipse point, for a query in the first quadrant
// outside the ellipse (bisection on the Lagrange multiplier).
double EllipseRoot(double r0, double z0, double z1, double g) {
  const double n0 = r0 * z0;
  double s0 = z1 - 1.0;
  double s1 = g < 0.0 ? 0.0 : std::hypot(n0, z1) - 1.0;
  double s = 0.0;
  for (int i = 0; i < 200; ++i) {
    s = (s0 + s1) / 2.0;
    if (s == s0 || s == s1) break;
    const double ratio0 = n0 / (s + r0);
    const double ratio1 = z1 / (s + 1.0);
    const double gs = ratio0 * ratio0 + ratio1 * ratio1 - 1.0;
    if (gs > 0.0) {
      s0 = s;
    } else if (gs < 0.0) {
      s1 = s;
    } else {
      break;
    }
  }
  return s;
}

// Distance from (y0, y1), both >= 0, to the ellipse with e0 >= e1 > 0.
double DistanceToEllipseQuadrant(double e0, double e1, double y0, double y1) {
  if (y1 > 0.0) {
    if (y0 > 0.0) {
      const double z0 = y0 / e0;
      const double z1 = y1 / e1;
      const double g = z0 * z0 + z1 * z1 - 1.0;
      if (g == 0.0) return 0.0;
      const double r0 = (e0 / e1) * (e0 / e1);
      const double s = EllipseRoot(r0, z0, z1, g);
      const double x0 = r0 * y0 / (s + r0);
      const double x1 = y1 / (s + 1.0);
      return std::hypot(x0 - y0, x1 - y1);
    }
    return std::abs(y1 - e1);
  }
  const double numer0 = e0 * y0;
  const double denom0 = e0 * e0 - e1 * e1;
  if (numer0 < denom0) {
    const double xde0 = numer0 / denom0;
    const double x0 = e0 * xde0;
    const double x1 = e1 * std::sqrt(1.0 - xde0 * xde0);
    return std::hypot(x0 - y0, x1);
  }
  return std::abs(y0 - e0);
}

void Require(bool condition, const std::string& message) {
  if (!condition) throw Error(ErrorCode::kInvalidParams, message);
}

}  // namespace

void Validate(const EpisodeConfig& cfg) {
  Validate(cfg.field);
  Validate(cfg.corruption);
  Validate(cfg.controller);
  Validate(cfg.camera);
  Require(cfg.dt > 0.0, "dt must be > 0");
  Require(cfg.dt <= cfg.control_period, "dt must not exceed control_period");
  Require(cfg.path_length > 0.0, "path_length must be > 0");
  Require(cfg.path_length <= cfg.field.row_length * cfg.field.scale + 1e-9,
          "path_length exceeds row length");
  Require(cfg.goal_radius > 0.0, "goal_radius must be > 0");
  Require(cfg.timeout > 0.0, "timeout must be > 0");
  Require(cfg.rover_radius >= 0.0, "rover_radius must be >= 0");
  Require(cfg.drift_sigma >= 0.0, "drift_sigma must be >= 0");
  Require(cfg.obstacle_gradient >= 0.0, "obstacle_gradient must be >= 0");
  Require(cfg.camera_height > 0.0, "camera_height must be > 0");
}

std::string_view OutcomeName(Outcome outcome) {
  switch (outcome) {
    case Outcome::kGoalReached: return "GoalReached";
    case Outcome::kCollision: return "Collision";
    case Outcome::kBlocked: return "Blocked";
    case Outcome::kTimeout: return "Timeout";
  }
  return "Unknown";
}

Outcome ParseOutcome(std::string_view name) {
  for (Outcome o : {Outcome::kGoalReached, Outcome::kCollision, Outcome::kBlocked,
                    Outcome::kTimeout}) {
    if (OutcomeName(o) == name) return o;
  }
  throw Error(ErrorCode::kInvalidParams, "unknown outcome '" + std::string(name) + "'");
}

RoverState Step(const RoverState& state, const Command& cmd, double dt,
                const Heightfield& terrain, double drift_sigma, Rng& noise,
                double extra_gradient) {
  const Vec2 grad = terrain.GradientAt(state.x, state.y);
  const double eta = drift_sigma * (Norm(grad) + extra_gradient) * noise.Normal();
  RoverState next = state;
  next.x += cmd.v_x * std::cos(state.yaw) * dt;
  next.y += cmd.v_x * std::sin(state.yaw) * dt;
  next.yaw = WrapAngle(state.yaw + (cmd.omega_z + eta) * dt);
  next.t += dt;
  if (!terrain.Contains(next.x, next.y)) {
    throw Error(ErrorCode::kOutOfBounds, "rover left the terrain");
  }
  next.z = terrain.HeightAt(next.x, next.y);
  return next;
}

bool DiscIntersectsEllipse(Vec2 point, double radius, double a, double b) {
  double px = std::abs(point.x);
  double py = std::abs(point.y);
  if ((px / a) * (px / a) + (py / b) * (py / b) <= 1.0) return true;
  if (a < b) {
    std::swap(a, b);
    std::swap(px, py);
  }
  return DistanceToEllipseQuadrant(a, b, px, py) <= radius;
}

bool TouchesPlant(const RoverState& state, const FieldLayout& layout,
                  double rover_radius) {
  const Vec2 p{state.x, state.y};
  for (const Plant& plant : layout.plants) {
    const double a = plant.spec.length / 2.0;
    const double b = plant.spec.width / 2.0;
    const Vec2 d = p - plant.position;
    if (std::abs(d.x) > a + rover_radius || std::abs(d.y) > b + rover_radius) continue;
    if (DiscIntersectsEllipse(d, rover_radius, a, b)) return true;
  }
  return false;
}

bool TouchesObstacle(const RoverState& state, const FieldLayout& layout,
                     double rover_radius) {
  const Vec2 p{state.x, state.y};
  for (const Obstacle& o : layout.obstacles) {
    if (Norm(p - o.position) <= o.radius + rover_radius) return true;
  }
  return false;
}

bool CheckCollision(const RoverState& state, const FieldLayout& layout,
                    double rover_radius) {
  return TouchesPlant(state, layout, rover_radius) ||
         TouchesObstacle(state, layout, rover_radius);
}

CameraModel RoverCamera(const CameraModel& intrinsics, const RoverState& state,
                        double mount_height) {
  CameraModel cam = intrinsics;
  cam.pose = {{state.x, state.y, state.z + mount_height}, state.yaw, 0.0, 0.0};
  return cam;
}

World GenerateWorld(const FieldParams& params, std::uint64_t seed) {
  return {GenerateField(params, DeriveSeed(seed, Stream::kLayout)),
          GenerateHeightfield(EffectiveTerrain(params), DeriveSeed(seed, Stream::kTerrain))};
}

EpisodeReport RunEpisode(const EpisodeConfig& cfg) {
  Validate(cfg);
  EpisodeReport report;
  report.seed = cfg.seed;
  report.config = cfg;

  World world = GenerateWorld(cfg.field, cfg.seed);
  const Heightfield& terrain = world.terrain;
  FieldLayout& layout = world.layout;
  if (cfg.clear_plants) {
    layout.plants.clear();
    layout.obstacles.clear();
  }
  const std::uint64_t corruption_seed = DeriveSeed(cfg.seed, Stream::kCorruption);
  Rng drift(DeriveSeed(cfg.seed, Stream::kDrift));

  const int corridor = cfg.corridor_index.value_or(DefaultCorridorIndex(layout));
  if (corridor < 0 || corridor >= static_cast<int>(layout.corridor_centerlines.size())) {
    throw Error(ErrorCode::kInvalidParams,
                "corridor_index " + std::to_string(corridor) + " does not exist");
  }
  report.corridor_index = corridor;
  const Segment centerline = layout.corridor_centerlines[corridor];
  report.centerline = centerline;
  const Vec2 dir = (1.0 / centerline.length()) * centerline.direction();
  const Vec2 left{-dir.y, dir.x};
  const Vec2 start = centerline.a + cfg.start_lateral_offset * left;
  report.goal = centerline.a + cfg.path_length * dir;

  const Scene scene(layout, terrain);
  RoverState state;
  state.x = start.x;
  state.y = start.y;
  if (!terrain.Contains(state.x, state.y)) {
    throw Error(ErrorCode::kInvalidParams, "start pose outside terrain");
  }
  state.z = terrain.HeightAt(state.x, state.y);
  state.yaw = WrapAngle(std::atan2(dir.y, dir.x) + cfg.start_yaw_offset);

  const bool corrupt = !(cfg.corruption == CorruptionParams{});
  Command held;
  int ticks = 0;
  int steps = 0;
  int consecutive_blocked = 0;
  bool on_stone = false;
  std::optional<Outcome> outcome;
  constexpr double kTimeEps = 1e-9;

  while (!outcome) {
    if (state.t + kTimeEps >= ticks * cfg.control_period) {
      Mask mask = RenderMask(RoverCamera(cfg.camera, state, cfg.camera_height), scene);
      if (corrupt) {
        mask = CorruptMask(mask, cfg.corruption,
                           SplitMix64(corruption_seed + static_cast<std::uint64_t>(ticks)));
      }
      const auto cmd = ControlCommand(mask, cfg.controller);
      if (cmd) {
        held = *cmd;
        consecutive_blocked = 0;
      } else {
        held = {};
        ++consecutive_blocked;
        ++report.no_passage_frames;
      }
      report.trajectory.push_back({state.t, state.x, state.y, state.yaw});
      report.commands.push_back(held);
      ++ticks;
      if (consecutive_blocked >= cfg.controller.no_passage_patience) {
        outcome = Outcome::kBlocked;
        report.detail = "no free passage for " + std::to_string(consecutive_blocked) +
                        " frames";
        break;
      }
    }
    if (TouchesPlant(state, layout, cfg.rover_radius)) {
      outcome = Outcome::kCollision;
      report.detail = "rover disc touched a plant";
      break;
    }
    const bool stone = TouchesObstacle(state, layout, cfg.rover_radius);
    if (stone && !on_stone) ++report.obstacle_contacts;
    on_stone = stone;
    if (Norm(Vec2{state.x, state.y} - report.goal) <= cfg.goal_radius) {
      outcome = Outcome::kGoalReached;
      break;
    }
    if (state.t + kTimeEps >= cfg.timeout) {
      outcome = Outcome::kTimeout;
      break;
    }
    try {
      state = Step(state, held, cfg.dt, terrain, cfg.drift_sigma, drift,
                   on_stone ? cfg.obstacle_gradient : 0.0);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kOutOfBounds) throw;
      outcome = Outcome::kCollision;
      report.detail = "rover left the terrain";
      break;
    }
    ++steps;
    state.t = steps * cfg.dt;
  }

  report.outcome = *outcome;
  report.final_state = state;
  report.physics_steps = steps;
  report.final_cross_track = CrossTrackError({state.x, state.y}, centerline);
  report.metrics = TrajectoryMetrics(report.trajectory, report.commands, centerline,
                                     report.goal);
  report.metrics.outcome = std::string(OutcomeName(*outcome));
  return report;
}

}  // namespace rowcrop
