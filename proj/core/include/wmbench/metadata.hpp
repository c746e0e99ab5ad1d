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
#include <string>
#include <vector>

namespace wmbench {

enum class ContainerFormat { kPng, kJpeg };

struct RemovedSegment {
  std::string name;  // chunk type ("tEXt") or marker name ("APP1", "COM")
  std::size_t bytes = 0;  // including framing (length, type/marker, CRC)
};

struct StripResult {
  ContainerFormat format = ContainerFormat::kPng;
  std::vector<std::uint8_t> bytes;
  std::vector<RemovedSegment> removed;
};

// PNG: keeps IHDR, PLTE, IDAT and IEND, verifying every CRC; anything after
// IEND is dropped. JPEG: drops APP0-APP15 and COM segments except an Adobe
// APP14, which selects the colour transform and therefore affects decoded
// pixels. Entropy-coded data passes through untouched. Throws
// kUnsupportedFormat for other containers and kCorrupt for malformed ones.
StripResult strip_metadata(std::span<const std::uint8_t> bytes);

StripResult strip_metadata_file(const std::filesystem::path& in, const std::filesystem::path& out);

std::string format_strip_report(const StripResult& r);

}  // namespace wmbench
