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
#include <span>
#include <vector>

#include "rowcrop/mask.hpp"

namespace rowcrop {

struct ControllerConfig {
  double omega_gain = 3.0;
  double v_max = 1.0;
  double omega_cap = 1.0;  // rad/s
  double v_cap = 0.5;      // m/s
  // Columns with at most floor(frac * height) plant pixels count as free.
  double free_threshold_frac = 0.05;
  int no_passage_patience = 5;

  friend bool operator==(const ControllerConfig&, const ControllerConfig&) = default;
};

void Validate(const ControllerConfig& cfg);

struct Command {
  double v_x = 0.0;
  double omega_z = 0.0;

  friend bool operator==(const Command&, const Command&) = default;
};

// Inclusive column range.
struct ColumnRun {
  int start = 0;
  int end = 0;

  int length() const { return end - start + 1; }
  friend bool operator==(const ColumnRun&, const ColumnRun&) = default;
};

// Plant pixel count per column. Throws Error(kEmptyMask) for a zero-size mask.
std::vector<int> ColumnHistogram(const Mask& mask);

// Longest maximal run of columns with count <= threshold. Ties go to the run
// whose center is nearest the histogram center, then to the smaller start.
std::optional<ColumnRun> FindFreeCluster(std::span<const int> hist, int threshold);

// Offset of the run center from the image center, normalized by half width.
double NormalizedOffset(const ColumnRun& run, int width);

// Velocity law for a given normalized offset, with caps applied after gains.
Command CommandForOffset(double d_hat, const ControllerConfig& cfg);

// Empty result means no free passage in this frame.
std::optional<Command> ControlCommand(const Mask& mask, const ControllerConfig& cfg);

}  // namespace rowcrop
