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

#include "rowcrop/io/png_io.hpp"

#include <png.h>

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "rowcrop/error.hpp"

namespace rowcrop::io {

void WriteMaskPng(const std::filesystem::path& path, const Mask& mask) {
  if (mask.empty()) throw Error(ErrorCode::kEmptyMask, "cannot write an empty mask");
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::vector<std::uint8_t> gray(mask.size());
  for (std::size_t i = 0; i < gray.size(); ++i) gray[i] = mask.pixels()[i] ? 255 : 0;
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(mask.width());
  image.height = static_cast<png_uint_32>(mask.height());
  image.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.c_str(), 0, gray.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::kWriteError, path.string() + ": " + message);
  }
}

Mask ReadMaskPng(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    const std::string message = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::kReadError, path.string() + ": " + message);
  }
  image.format = PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> gray(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, gray.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::kReadError, path.string() + ": " + message);
  }
  Mask mask(static_cast<int>(image.width), static_cast<int>(image.height));
  for (std::size_t i = 0; i < mask.size(); ++i) mask.pixels()[i] = gray[i] >= 128;
  return mask;
}

}  // namespace rowcrop::io
