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

#include <filesystem>

#include "rowcrop/mask.hpp"

namespace rowcrop::io {

// 8-bit grayscale, 0 for free and 255 for plant.
void WriteMaskPng(const std::filesystem::path& path, const Mask& mask);

// Any PNG is accepted; pixels with luminance >= 128 read as plant.
Mask ReadMaskPng(const std::filesystem::path& path);

}  // namespace rowcrop::io
