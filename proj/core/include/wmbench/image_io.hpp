// Copyright 2026 The wmbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
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
#include <vector>

#include "wmbench/image.hpp"

namespace wmbench {

// Maps a [0,1] sample to a byte with round-half-up: floor(v * 255 + 0.5).
std::uint8_t quantize_8bit(double sample) noexcept;

// Decodes PNG (8/16-bit, gray/RGB/palette; alpha discarded), binary PPM/PGM
// (P6/P5, maxval up to 65535) or baseline/progressive JPEG. Errors:
// kUnsupportedFormat for unknown signatures, kCorrupt for malformed streams.
Image decode_image(std::span<const std::uint8_t> bytes);

// Throws kIo if the file cannot be read.
Image load_image(const std::filesystem::path& path);

// Writes 8-bit PNG, or P6/P5 for .ppm/.pgm extensions. Throws kIo on
// unwritable paths and kUnsupportedFormat for other extensions.
void save_image(const Image& img, const std::filesystem::path& path);

std::vector<std::uint8_t> encode_png(const Image& img);
std::vector<std::uint8_t> encode_ppm(const Image& img);
std::vector<std::uint8_t> encode_jpeg(const Image& img, int quality);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

bool has_image_extension(const std::filesystem::path& path);

}  // namespace wmbench
