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

#include <string>

#include "rowcrop/sim.hpp"

namespace rowcrop::io {

// Columns t,x,y,yaw,v_cmd,omega_cmd,e_ct, one row per control tick.
std::string TrajectoryCsv(const EpisodeReport& report);

// Pretty printed report document followed by a newline.
std::string ReportJson(const EpisodeReport& report);

// Shortest decimal that reads back to the same double; "nan" and "inf"
// spelled out.
std::string FormatDouble(double value);

}  // namespace rowcrop::io
