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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace rowcrop::io {

// Lowercase hex SHA-256 digest.
std::string Sha256Hex(std::span<const std::uint8_t> bytes);
std::string Sha256Hex(std::string_view bytes);

// Reads a whole file; throws Error(kReadError) on failure.
std::string ReadFile(const std::filesystem::path& path);

// Writes a whole file, creating parent directories; throws Error(kWriteError).
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace rowcrop::io
