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

#include "rowcrop/controller.hpp"

#include <algorithm>
#include <cmath>

#include "rowcrop/error.hpp"

namespace rowcrop {

void Validate(const ControllerConfig& cfg) {
  if (!(cfg.omega_gain > 0.0 && cfg.v_max > 0.0 && cfg.omega_cap > 0.0 &&
        cfg.v_cap > 0.0 && cfg.no_passage_patience > 0)) {
    throw Error(ErrorCode::kInvalidParams, "controller gains and caps must be > 0");
  }
  if (!(cfg.free_threshold_frac >= 0.0 && cfg.free_threshold_frac < 1.0)) {
    throw Error(ErrorCode::kInvalidParams, "free_threshold_frac must lie in [0, 1)");
  }
}

std::vector<int> ColumnHistogram(const Mask& mask) {
  if (mask.width() == 0 || mask.height() == 0) {
    throw Error(ErrorCode::kEmptyMask, "mask has zero size");
  }
  std::vector<int> hist(static_cast<std::size_t>(mask.width()), 0);
  for (int y = 0; y < mask.height(); ++y) {
    const std::uint8_t* row = mask.row(y);
    for (int x = 0; x < mask.width(); ++x) hist[x] += row[x];
  }
  return hist;
}

std::optional<ColumnRun> FindFreeCluster(std::span<const int> hist, int threshold) {
  const int n = static_cast<int>(hist.size());
  // Twice the distance from run center to image center keeps this integral.
  const auto center_offset2 = [n](const ColumnRun& r) {
    return std::abs(r.start + r.end + 1 - n);
  };
  std::optional<ColumnRun> best;
  int x = 0;
  while (x < n) {
    if (hist[x] > threshold) {
      ++x;
      continue;
    }
    ColumnRun run{x, x};
    while (run.end + 1 < n && hist[run.end + 1] <= threshold) ++run.end;
    x = run.end + 1;
    if (!best || run.length() > best->length() ||
        (run.length() == best->length() &&
         center_offset2(run) < center_offset2(*best))) {
      best = run;
    }
  }
  return best;
}

double NormalizedOffset(const ColumnRun& run, int width) {
  const double half = width / 2.0;
  const double center = (run.start + run.end + 1) / 2.0;
  return (center - half) / half;
}

Command CommandForOffset(double d_hat, const ControllerConfig& cfg) {
  const double omega = std::clamp(-cfg.omega_gain * d_hat, -cfg.omega_cap, cfg.omega_cap);
  const double v = std::clamp(cfg.v_max * (1.0 - d_hat * d_hat), 0.0, cfg.v_cap);
  return {v, omega};
}

std::optional<Command> ControlCommand(const Mask& mask, const ControllerConfig& cfg) {
  const std::vector<int> hist = ColumnHistogram(mask);
  const int threshold =
      static_cast<int>(std::floor(cfg.free_threshold_frac * mask.height()));
  const auto run = FindFreeCluster(hist, threshold);
  if (!run) return std::nullopt;
  return CommandForOffset(NormalizedOffset(*run, mask.width()), cfg);
}

}  // namespace rowcrop
