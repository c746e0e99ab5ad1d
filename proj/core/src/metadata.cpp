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

#include "wmbench/metadata.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>

#include <fmt/format.h>
#include <zlib.h>

#include "wmbench/error.hpp"
#include "wmbench/image_io.hpp"

namespace wmbench {
namespace {

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

std::uint32_t be32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) << 24 | static_cast<std::uint32_t>(p[1]) << 16 |
         static_cast<std::uint32_t>(p[2]) << 8 | static_cast<std::uint32_t>(p[3]);
}

bool is_png(std::span<const std::uint8_t> b) {
  return b.size() >= 8 && std::equal(std::begin(kPngSignature), std::end(kPngSignature), b.begin());
}

bool is_jpeg(std::span<const std::uint8_t> b) { return b.size() >= 3 && b[0] == 0xFF && b[1] == 0xD8 && b[2] == 0xFF; }

StripResult strip_png(std::span<const std::uint8_t> in) {
  StripResult r;
  r.format = ContainerFormat::kPng;
  r.bytes.assign(in.begin(), in.begin() + 8);
  std::size_t pos = 8;
  bool seen_header = false, seen_end = false;
  while (pos < in.size()) {
    if (in.size() - pos < 12) fail(ErrorCode::kCorrupt, "PNG chunk header truncated");
    const std::uint32_t length = be32(&in[pos]);
    if (length > 0x7fffffffu || in.size() - pos - 12 < length) fail(ErrorCode::kCorrupt, "PNG chunk overruns the file");
    const std::string type(reinterpret_cast<const char*>(&in[pos + 4]), 4);
    for (char ch : type)
      if (!std::isalpha(static_cast<unsigned char>(ch))) fail(ErrorCode::kCorrupt, "PNG chunk type is not alphabetic");
    const std::size_t total = 12 + static_cast<std::size_t>(length);
    const std::uint32_t stored = be32(&in[pos + 8 + length]);
    const auto crc = static_cast<std::uint32_t>(crc32(crc32(0L, Z_NULL, 0), &in[pos + 4], length + 4));
    if (crc != stored) fail(ErrorCode::kCorrupt, "PNG chunk " + type + " has a bad CRC");
    if (!seen_header && type != "IHDR") fail(ErrorCode::kCorrupt, "PNG does not start with IHDR");
    seen_header = true;

    if (type == "IHDR" || type == "PLTE" || type == "IDAT" || type == "IEND") {
      r.bytes.insert(r.bytes.end(), in.begin() + static_cast<std::ptrdiff_t>(pos),
                     in.begin() + static_cast<std::ptrdiff_t>(pos + total));
    } else {
      r.removed.push_back({type, total});
    }
    pos += total;
    if (type == "IEND") {
      seen_end = true;
      break;
    }
  }
  if (!seen_end) fail(ErrorCode::kCorrupt, "PNG has no IEND chunk");
  if (pos < in.size()) r.removed.push_back({"trailing-data", in.size() - pos});
  return r;
}

std::string marker_name(std::uint8_t m) {
  if (m >= 0xE0 && m <= 0xEF) return fmt::format("APP{}", m - 0xE0);
  if (m == 0xFE) return "COM";
  return fmt::format("FF{:02X}", m);
}

bool is_adobe_app14(std::span<const std::uint8_t> segment) {
  // segment starts at the marker: FF EE len len "Adobe"
  return segment.size() >= 9 && std::memcmp(segment.data() + 4, "Adobe", 5) == 0;
}

StripResult strip_jpeg(std::span<const std::uint8_t> in) {
  StripResult r;
  r.format = ContainerFormat::kJpeg;
  r.bytes = {0xFF, 0xD8};
  std::size_t pos = 2;
  bool seen_end = false;
  while (pos < in.size()) {
    if (in[pos] != 0xFF) fail(ErrorCode::kCorrupt, "JPEG marker expected");
    // Fill bytes before a marker are legal.
    while (pos < in.size() && in[pos] == 0xFF) ++pos;
    if (pos >= in.size()) fail(ErrorCode::kCorrupt, "JPEG truncated inside a marker");
    const std::uint8_t m = in[pos++];
    if (m == 0xD9) {
      r.bytes.insert(r.bytes.end(), {0xFF, 0xD9});
      seen_end = true;
      break;
    }
    if (m == 0x01 || (m >= 0xD0 && m <= 0xD7)) {
      r.bytes.insert(r.bytes.end(), {0xFF, m});
      continue;
    }
    if (m == 0xD8 || m == 0x00) fail(ErrorCode::kCorrupt, "unexpected JPEG marker");
    if (in.size() - pos < 2) fail(ErrorCode::kCorrupt, "JPEG segment length truncated");
    const std::size_t length = static_cast<std::size_t>(in[pos]) << 8 | in[pos + 1];
    if (length < 2 || in.size() - pos < length) fail(ErrorCode::kCorrupt, "JPEG segment overruns the file");
    const auto segment = in.subspan(pos - 2, length + 2);
    pos += length;

    const bool app = m >= 0xE0 && m <= 0xEF;
    if ((app && !(m == 0xEE && is_adobe_app14(segment))) || m == 0xFE) {
      r.removed.push_back({marker_name(m), segment.size()});
    } else {
      r.bytes.insert(r.bytes.end(), segment.begin(), segment.end());
    }

    if (m == 0xDA) {
      // Entropy-coded data runs to the next marker that is neither a
      // stuffed zero nor a restart marker.
      const std::size_t start = pos;
      while (pos + 1 < in.size()) {
        if (in[pos] == 0xFF && in[pos + 1] != 0x00 && !(in[pos + 1] >= 0xD0 && in[pos + 1] <= 0xD7) &&
            in[pos + 1] != 0xFF)
          break;
        ++pos;
      }
      if (pos + 1 >= in.size()) fail(ErrorCode::kCorrupt, "JPEG scan data runs past the end of the file");
      r.bytes.insert(r.bytes.end(), in.begin() + static_cast<std::ptrdiff_t>(start),
                     in.begin() + static_cast<std::ptrdiff_t>(pos));
    }
  }
  if (!seen_end) fail(ErrorCode::kCorrupt, "JPEG has no EOI marker");
  if (pos < in.size()) r.removed.push_back({"trailing-data", in.size() - pos});
  return r;
}

}  // namespace

StripResult strip_metadata(std::span<const std::uint8_t> bytes) {
  if (is_png(bytes)) return strip_png(bytes);
  if (is_jpeg(bytes)) return strip_jpeg(bytes);
  fail(ErrorCode::kUnsupportedFormat, "strip_metadata supports PNG and JPEG only");
}

StripResult strip_metadata_file(const std::filesystem::path& in, const std::filesystem::path& out) {
  StripResult r = strip_metadata(read_file(in));
  write_file(out, r.bytes);
  return r;
}

std::string format_strip_report(const StripResult& r) {
  std::string s = fmt::format("format: {}\n", r.format == ContainerFormat::kPng ? "png" : "jpeg");
  if (r.removed.empty()) return s + "removed: none\n";
  for (const auto& seg : r.removed) s += fmt::format("removed: {} {} bytes\n", seg.name, seg.bytes);
  return s;
}

}  // namespace wmbench
