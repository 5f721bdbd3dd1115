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
#include <vector>

#include "rowcrop/error.hpp"

namespace rowcrop {

// Binary segmentation image, row-major. 1 = plant, 0 = free.
class Mask {
 public:
  Mask() = default;
  Mask(int width, int height, std::uint8_t fill = 0)
      : width_(width),
        height_(height),
        pixels_(static_cast<std::size_t>(width > 0 ? width : 0) *
                    static_cast<std::size_t>(height > 0 ? height : 0),
                fill) {
    if (width < 0 || height < 0) {
      throw Error(ErrorCode::kInvalidParams, "mask dimensions must be >= 0");
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return pixels_.empty(); }
  std::size_t size() const { return pixels_.size(); }

  std::uint8_t at(int x, int y) const { return pixels_[Index(x, y)]; }
  void set(int x, int y, std::uint8_t value) { pixels_[Index(x, y)] = value; }

  std::uint8_t* row(int y) { return pixels_.data() + Index(0, y); }
  const std::uint8_t* row(int y) const { return pixels_.data() + Index(0, y); }

  std::vector<std::uint8_t>& pixels() { return pixels_; }
  const std::vector<std::uint8_t>& pixels() const { return pixels_; }

  std::size_t CountOnes() const {
    std::size_t n = 0;
    for (auto p : pixels_) n += p;
    return n;
  }

  friend bool operator==(const Mask&, const Mask&) = default;

 private:
  std::size_t Index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// Column-for-column mirror image.
inline Mask MirrorColumns(const Mask& mask) {
  Mask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      out.set(mask.width() - 1 - x, y, mask.at(x, y));
    }
  }
  return out;
}

}  // namespace rowcrop
