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

#include "rowcrop/io/report.hpp"

#include <charconv>
#include <cmath>

#include "rowcrop/io/json_io.hpp"
#include "rowcrop/metrics.hpp"

namespace rowcrop::io {

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string TrajectoryCsv(const EpisodeReport& report) {
  std::string out = "t,x,y,yaw,v_cmd,omega_cmd,e_ct\n";
  for (std::size_t i = 0; i < report.trajectory.size(); ++i) {
    const PoseSample& p = report.trajectory[i];
    const Command c = i < report.commands.size() ? report.commands[i] : Command{};
    const double e = CrossTrackError({p.x, p.y}, report.centerline);
    for (double v : {p.t, p.x, p.y, p.yaw, c.v_x, c.omega_z}) {
      out += FormatDouble(v);
      out += ',';
    }
    out += FormatDouble(e);
    out += '\n';
  }
  return out;
}

std::string ReportJson(const EpisodeReport& report) {
  return ToJson(report).dump(2) + "\n";
}

}  // namespace rowcrop::io
