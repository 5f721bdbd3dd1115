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

#include "rowcrop/io/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "rowcrop/error.hpp"

namespace rowcrop::io {
namespace {

[[noreturn]] void Fail(const std::string& context, const std::string& message) {
  throw Error(ErrorCode::kConfigError, context + ": " + message);
}

// Reads keys from one JSON object and rejects any key that was never asked
// for once Finish() runs.
class StrictObject {
 public:
  StrictObject(const Json& j, std::string context)
      : j_(j), context_(std::move(context)) {
    if (!j_.is_object()) Fail(context_, "expected an object");
  }

  const Json* Find(const char* key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const Json& Require(const char* key) {
    const Json* v = Find(key);
    if (v == nullptr) Fail(context_, std::string("missing key '") + key + "'");
    return *v;
  }

  void Get(const char* key, double& out) {
    if (const Json* v = Find(key)) out = AsDouble(*v, key);
  }
  void Get(const char* key, int& out) {
    if (const Json* v = Find(key)) {
      if (!v->is_number_integer()) Fail(context_, std::string(key) + " must be an integer");
      out = v->get<int>();
    }
  }
  void Get(const char* key, std::uint64_t& out) {
    if (const Json* v = Find(key)) {
      if (!v->is_number_unsigned() &&
          !(v->is_number_integer() && v->get<std::int64_t>() >= 0)) {
        Fail(context_, std::string(key) + " must be a non-negative integer");
      }
      out = v->get<std::uint64_t>();
    }
  }
  void Get(const char* key, bool& out) {
    if (const Json* v = Find(key)) {
      if (!v->is_boolean()) Fail(context_, std::string(key) + " must be a boolean");
      out = v->get<bool>();
    }
  }
  void Get(const char* key, std::string& out) {
    if (const Json* v = Find(key)) {
      if (!v->is_string()) Fail(context_, std::string(key) + " must be a string");
      out = v->get<std::string>();
    }
  }

  double AsDouble(const Json& v, const char* key) const {
    if (!v.is_number()) Fail(context_, std::string(key) + " must be a number");
    return v.get<double>();
  }

  void Finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.contains(key)) Fail(context_, "unknown key '" + key + "'");
    }
  }

  const std::string& context() const { return context_; }

 private:
  const Json& j_;
  std::string context_;
  std::set<std::string> seen_;
};

Json ToJson(Vec2 v) { return Json::array({v.x, v.y}); }

Json ToJson(const Segment& s) { return Json::array({s.a.x, s.a.y, s.b.x, s.b.y}); }

Segment SegmentFromJson(const Json& j, const std::string& context) {
  if (!j.is_array() || j.size() != 4) Fail(context, "expected [ax, ay, bx, by]");
  for (const auto& v : j) {
    if (!v.is_number()) Fail(context, "segment coordinates must be numbers");
  }
  return {{j[0].get<double>(), j[1].get<double>()},
          {j[2].get<double>(), j[3].get<double>()}};
}

Json NumberOrNull(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

void RequireKnownKeys(const Json& j, std::initializer_list<std::string_view> allowed,
                      std::string_view context) {
  if (!j.is_object()) Fail(std::string(context), "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      Fail(std::string(context), "unknown key '" + key + "'");
    }
  }
}

Json ToJson(const PlantSpec& spec) {
  return {{"length", spec.length},
          {"width", spec.width},
          {"height", spec.height},
          {"shape", std::string(PlantShapeName(spec.shape))},
          {"trunk_radius", spec.trunk_radius},
          {"trunk_height", spec.trunk_height}};
}

Json ToJson(const TerrainSpec& spec) {
  return {{"length", spec.length},
          {"width", spec.width},
          {"delta_h", spec.delta_h},
          {"grid_resolution", spec.grid_resolution},
          {"slope", spec.slope}};
}

Json ToJson(const FieldParams& p) {
  return {{"crop_name", p.crop_name},
          {"row_length", p.row_length},
          {"num_rows", p.num_rows},
          {"rows_per_group", p.rows_per_group},
          {"d_rr", p.d_rr},
          {"d_RR", p.d_RR},
          {"d_pp", p.d_pp},
          {"scale", p.scale},
          {"plant", ToJson(p.plant)},
          {"terrain", ToJson(p.terrain)},
          {"obstacle_density", p.obstacle_density},
          {"plant_jitter", p.plant_jitter}};
}

Json ToJson(const CameraModel& cam) {
  return {{"width_px", cam.width_px},
          {"height_px", cam.height_px},
          {"hfov", cam.hfov},
          {"max_range", cam.max_range},
          {"pose",
           {{"x", cam.pose.position.x},
            {"y", cam.pose.position.y},
            {"z", cam.pose.position.z},
            {"yaw", cam.pose.yaw},
            {"pitch", cam.pose.pitch},
            {"roll", cam.pose.roll}}}};
}

Json ToJson(const CorruptionParams& p) {
  return {{"flip_prob", p.flip_prob},
          {"dilate_px", p.dilate_px},
          {"erode_px", p.erode_px},
          {"dropout_blocks", p.dropout_blocks},
          {"dropout_size_px", p.dropout_size_px}};
}

Json ToJson(const ControllerConfig& c) {
  return {{"omega_gain", c.omega_gain},
          {"v_max", c.v_max},
          {"omega_cap", c.omega_cap},
          {"v_cap", c.v_cap},
          {"free_threshold_frac", c.free_threshold_frac},
          {"no_passage_patience", c.no_passage_patience}};
}

Json ToJson(const EpisodeConfig& c) {
  return {{"field", ToJson(c.field)},
          {"seed", c.seed},
          {"corridor_index", c.corridor_index ? Json(*c.corridor_index) : Json(nullptr)},
          {"path_length", c.path_length},
          {"dt", c.dt},
          {"control_period", c.control_period},
          {"goal_radius", c.goal_radius},
          {"timeout", c.timeout},
          {"rover_radius", c.rover_radius},
          {"drift_sigma", c.drift_sigma},
          {"obstacle_gradient", c.obstacle_gradient},
          {"corruption", ToJson(c.corruption)},
          {"start_lateral_offset", c.start_lateral_offset},
          {"start_yaw_offset", c.start_yaw_offset},
          {"controller", ToJson(c.controller)},
          {"camera", ToJson(c.camera)},
          {"camera_height", c.camera_height},
          {"clear_plants", c.clear_plants}};
}

Json ToJson(const MetricsRecord& m) {
  return {{"cha", NumberOrNull(m.cha)},
          {"cha_excluded", m.cha_excluded},
          {"mae", m.mae},
          {"mse", m.mse},
          {"omega_std", m.omega_std},
          {"outcome", m.outcome}};
}

Json ToJson(const EpisodeReport& r) {
  Json trajectory = Json::array();
  for (const PoseSample& p : r.trajectory) {
    trajectory.push_back(Json::array({p.t, p.x, p.y, p.yaw}));
  }
  Json commands = Json::array();
  for (const Command& c : r.commands) {
    commands.push_back(Json::array({c.v_x, c.omega_z}));
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", "rowcrop.episode_report"},
          {"seed", r.seed},
          {"config", ToJson(r.config)},
          {"outcome", std::string(OutcomeName(r.outcome))},
          {"detail", r.detail},
          {"metrics", ToJson(r.metrics)},
          {"corridor_index", r.corridor_index},
          {"centerline", ToJson(r.centerline)},
          {"goal", ToJson(r.goal)},
          {"final_state",
           {{"x", r.final_state.x},
            {"y", r.final_state.y},
            {"z", r.final_state.z},
            {"yaw", r.final_state.yaw},
            {"t", r.final_state.t}}},
          {"final_cross_track", r.final_cross_track},
          {"no_passage_frames", r.no_passage_frames},
          {"obstacle_contacts", r.obstacle_contacts},
          {"physics_steps", r.physics_steps},
          {"trajectory_columns", Json::array({"t", "x", "y", "yaw"})},
          {"trajectory", std::move(trajectory)},
          {"command_columns", Json::array({"v_x", "omega_z"})},
          {"commands", std::move(commands)}};
}

PlantSpec PlantSpecFromJson(const Json& j, PlantSpec base) {
  StrictObject o(j, "plant");
  o.Get("length", base.length);
  o.Get("width", base.width);
  o.Get("height", base.height);
  std::string shape(PlantShapeName(base.shape));
  o.Get("shape", shape);
  try {
    base.shape = ParsePlantShape(shape);
  } catch (const Error& e) {
    Fail(o.context(), e.what());
  }
  o.Get("trunk_radius", base.trunk_radius);
  o.Get("trunk_height", base.trunk_height);
  o.Finish();
  return base;
}

TerrainSpec TerrainSpecFromJson(const Json& j, TerrainSpec base) {
  StrictObject o(j, "terrain");
  o.Get("length", base.length);
  o.Get("width", base.width);
  o.Get("delta_h", base.delta_h);
  o.Get("grid_resolution", base.grid_resolution);
  o.Get("slope", base.slope);
  o.Finish();
  return base;
}

FieldParams FieldParamsFromJson(const Json& j, FieldParams base) {
  StrictObject o(j, "field");
  if (const Json* preset = o.Find("preset")) {
    if (!preset->is_string()) Fail("field", "preset must be a string");
    base = Preset(preset->get<std::string>());
  }
  o.Get("crop_name", base.crop_name);
  o.Get("row_length", base.row_length);
  o.Get("num_rows", base.num_rows);
  o.Get("rows_per_group", base.rows_per_group);
  o.Get("d_rr", base.d_rr);
  o.Get("d_RR", base.d_RR);
  o.Get("d_pp", base.d_pp);
  o.Get("scale", base.scale);
  if (const Json* plant = o.Find("plant")) base.plant = PlantSpecFromJson(*plant, base.plant);
  if (const Json* terrain = o.Find("terrain")) {
    base.terrain = TerrainSpecFromJson(*terrain, base.terrain);
  }
  o.Get("obstacle_density", base.obstacle_density);
  o.Get("plant_jitter", base.plant_jitter);
  o.Finish();
  return base;
}

CameraModel CameraModelFromJson(const Json& j, CameraModel base) {
  StrictObject o(j, "camera");
  o.Get("width_px", base.width_px);
  o.Get("height_px", base.height_px);
  o.Get("hfov", base.hfov);
  o.Get("max_range", base.max_range);
  if (const Json* pose = o.Find("pose")) {
    StrictObject p(*pose, "camera.pose");
    p.Get("x", base.pose.position.x);
    p.Get("y", base.pose.position.y);
    p.Get("z", base.pose.position.z);
    p.Get("yaw", base.pose.yaw);
    p.Get("pitch", base.pose.pitch);
    p.Get("roll", base.pose.roll);
    p.Finish();
  }
  o.Finish();
  return base;
}

CorruptionParams CorruptionParamsFromJson(const Json& j, CorruptionParams base) {
  StrictObject o(j, "corruption");
  o.Get("flip_prob", base.flip_prob);
  o.Get("dilate_px", base.dilate_px);
  o.Get("erode_px", base.erode_px);
  o.Get("dropout_blocks", base.dropout_blocks);
  o.Get("dropout_size_px", base.dropout_size_px);
  o.Finish();
  return base;
}

ControllerConfig ControllerConfigFromJson(const Json& j, ControllerConfig base) {
  StrictObject o(j, "controller");
  o.Get("omega_gain", base.omega_gain);
  o.Get("v_max", base.v_max);
  o.Get("omega_cap", base.omega_cap);
  o.Get("v_cap", base.v_cap);
  o.Get("free_threshold_frac", base.free_threshold_frac);
  o.Get("no_passage_patience", base.no_passage_patience);
  o.Finish();
  return base;
}

EpisodeConfig EpisodeConfigFromJson(const Json& j, EpisodeConfig base) {
  StrictObject o(j, "episode");
  if (const Json* field = o.Find("field")) {
    if (field->is_string()) {
      base.field = Preset(field->get<std::string>());
    } else {
      base.field = FieldParamsFromJson(*field, base.field);
    }
  }
  o.Get("seed", base.seed);
  if (const Json* corridor = o.Find("corridor_index")) {
    if (corridor->is_null()) {
      base.corridor_index.reset();
    } else if (corridor->is_number_integer()) {
      base.corridor_index = corridor->get<int>();
    } else {
      Fail("episode", "corridor_index must be an integer or null");
    }
  }
  o.Get("path_length", base.path_length);
  o.Get("dt", base.dt);
  o.Get("control_period", base.control_period);
  o.Get("goal_radius", base.goal_radius);
  o.Get("timeout", base.timeout);
  o.Get("rover_radius", base.rover_radius);
  o.Get("drift_sigma", base.drift_sigma);
  o.Get("obstacle_gradient", base.obstacle_gradient);
  if (const Json* c = o.Find("corruption")) {
    base.corruption = CorruptionParamsFromJson(*c, base.corruption);
  }
  o.Get("start_lateral_offset", base.start_lateral_offset);
  o.Get("start_yaw_offset", base.start_yaw_offset);
  if (const Json* c = o.Find("controller")) {
    base.controller = ControllerConfigFromJson(*c, base.controller);
  }
  if (const Json* c = o.Find("camera")) base.camera = CameraModelFromJson(*c, base.camera);
  o.Get("camera_height", base.camera_height);
  o.Get("clear_plants", base.clear_plants);
  o.Finish();
  return base;
}

Json LayoutToJson(const FieldLayout& layout) {
  Json plants = Json::array();
  for (const Plant& p : layout.plants) {
    Json entry = ToJson(p.spec);
    entry["x"] = p.position.x;
    entry["y"] = p.position.y;
    plants.push_back(std::move(entry));
  }
  Json obstacles = Json::array();
  for (const Obstacle& o : layout.obstacles) {
    obstacles.push_back({{"x", o.position.x}, {"y", o.position.y}, {"radius", o.radius}});
  }
  Json rows = Json::array();
  for (const Segment& s : layout.row_centerlines) rows.push_back(ToJson(s));
  Json corridors = Json::array();
  for (const Segment& s : layout.corridor_centerlines) corridors.push_back(ToJson(s));
  return {{"schema_version", kSchemaVersion},
          {"kind", "rowcrop.world"},
          {"units", "meters"},
          {"up_axis", "Z"},
          {"handedness", "right"},
          {"mask_encoding", {{"free", 0}, {"plant", 255}}},
          {"seed", layout.seed},
          {"params", ToJson(layout.params)},
          {"plants", std::move(plants)},
          {"obstacles", std::move(obstacles)},
          {"row_centerlines", std::move(rows)},
          {"corridor_centerlines", std::move(corridors)},
          {"corridor_widths", layout.corridor_widths}};
}

FieldLayout LayoutFromJson(const Json& j) {
  StrictObject o(j, "world");
  const Json& version = o.Require("schema_version");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion) {
    Fail("world", "unsupported schema_version");
  }
  std::string kind;
  o.Get("kind", kind);
  if (kind != "rowcrop.world") Fail("world", "kind must be rowcrop.world");
  o.Find("units");
  o.Find("up_axis");
  o.Find("handedness");
  o.Find("mask_encoding");

  FieldLayout layout;
  const Json& seed = o.Require("seed");
  if (!seed.is_number_unsigned() && !seed.is_number_integer()) Fail("world", "bad seed");
  layout.seed = seed.get<std::uint64_t>();
  layout.params = FieldParamsFromJson(o.Require("params"));

  const Json& plants = o.Require("plants");
  if (!plants.is_array()) Fail("world", "plants must be an array");
  for (const Json& entry : plants) {
    StrictObject p(entry, "world.plants[]");
    Plant plant;
    p.Get("x", plant.position.x);
    p.Get("y", plant.position.y);
    p.Find("length");
    p.Find("width");
    p.Find("height");
    p.Find("shape");
    p.Find("trunk_radius");
    p.Find("trunk_height");
    p.Finish();
    Json spec = entry;
    spec.erase("x");
    spec.erase("y");
    plant.spec = PlantSpecFromJson(spec);
    layout.plants.push_back(plant);
  }
  const Json& obstacles = o.Require("obstacles");
  if (!obstacles.is_array()) Fail("world", "obstacles must be an array");
  for (const Json& entry : obstacles) {
    StrictObject p(entry, "world.obstacles[]");
    Obstacle ob;
    p.Get("x", ob.position.x);
    p.Get("y", ob.position.y);
    p.Get("radius", ob.radius);
    p.Finish();
    layout.obstacles.push_back(ob);
  }
  for (const Json& s : o.Require("row_centerlines")) {
    layout.row_centerlines.push_back(SegmentFromJson(s, "world.row_centerlines"));
  }
  for (const Json& s : o.Require("corridor_centerlines")) {
    layout.corridor_centerlines.push_back(SegmentFromJson(s, "world.corridor_centerlines"));
  }
  for (const Json& w : o.Require("corridor_widths")) {
    if (!w.is_number()) Fail("world", "corridor_widths must be numbers");
    layout.corridor_widths.push_back(w.get<double>());
  }
  o.Finish();
  return layout;
}

}  // namespace rowcrop::io
