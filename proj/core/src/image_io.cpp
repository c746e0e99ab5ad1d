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

#include "wmbench/image_io.hpp"

#include <png.h>
// jpeglib.h needs FILE and size_t declared first.
#include <cstdio>
#include <jpeglib.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstring>
#include <fstream>
#include <string>

#include "wmbench/error.hpp"

namespace wmbench {

std::uint8_t quantize_8bit(double sample) noexcept {
  const double v = std::clamp(sample, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::floor(v * 255.0 + 0.5));
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) fail(ErrorCode::kIo, "read failed for " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::kIo, "write failed for " + path.string());
}

namespace {

std::string lower_ext(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::ranges::transform(ext, ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return ext;
}

// ---------------------------------------------------------------------------
// PNG

struct PngReadState {
  std::span<const std::uint8_t> bytes;
  std::size_t offset = 0;
  char message[256] = {};
};

void png_read_callback(png_structp png, png_bytep out, png_size_t count) {
  auto* state = static_cast<PngReadState*>(png_get_io_ptr(png));
  if (state->offset + count > state->bytes.size()) png_error(png, "unexpected end of PNG stream");
  std::memcpy(out, state->bytes.data() + state->offset, count);
  state->offset += count;
}

void png_error_callback(png_structp png, png_const_charp msg) {
  auto* state = static_cast<PngReadState*>(png_get_error_ptr(png));
  if (state != nullptr) std::snprintf(state->message, sizeof(state->message), "%s", msg);
  png_longjmp(png, 1);
}

void png_warning_callback(png_structp, png_const_charp) {}

// Decodes into `rows` (8 or 16 bit, gray or RGB after transforms). Returns
// false on libpng error; no C++ objects with destructors live in this frame
// across setjmp.
bool png_decode_raw(PngReadState* state, std::vector<std::uint8_t>* pixels, png_uint_32* width,
                    png_uint_32* height, int* channels, int* bit_depth) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, state, png_error_callback,
                                           png_warning_callback);
  if (png == nullptr) return false;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_set_read_fn(png, state, png_read_callback);
  png_read_info(png, info);

  const int color_type = png_get_color_type(png, info);
  int depth = png_get_bit_depth(png, info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) {
    png_set_palette_to_rgb(png);
    depth = 8;
  }
  if (color_type == PNG_COLOR_TYPE_GRAY && depth < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
    depth = 8;
  }
  if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  if (depth == 16) png_set_swap(png);  // host little-endian 16-bit samples
  png_read_update_info(png, info);

  *width = png_get_image_width(png, info);
  *height = png_get_image_height(png, info);
  *channels = png_get_channels(png, info);
  *bit_depth = png_get_bit_depth(png, info);
  const png_size_t row_bytes = png_get_rowbytes(png, info);

  pixels->resize(row_bytes * *height);
  for (png_uint_32 y = 0; y < *height; ++y) png_read_row(png, pixels->data() + y * row_bytes, nullptr);
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

Image decode_png(std::span<const std::uint8_t> bytes) {
  PngReadState state{bytes};
  std::vector<std::uint8_t> pixels;
  png_uint_32 width = 0, height = 0;
  int channels = 0, depth = 0;
  if (!png_decode_raw(&state, &pixels, &width, &height, &channels, &depth))
    fail(ErrorCode::kCorrupt, std::string("PNG decode failed: ") + state.message);
  if (width == 0 || height == 0) fail(ErrorCode::kCorrupt, "PNG has zero dimension");
  // After stripping alpha only gray (1) or RGB (3) remain.
  if (channels != 1 && channels != 3) fail(ErrorCode::kUnsupportedFormat, "unexpected PNG channel layout");

  Image img(static_cast<int>(width), static_cast<int>(height), channels);
  const std::size_t n = img.plane_size();
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < channels; ++c) {
      const std::size_t idx = i * static_cast<std::size_t>(channels) + static_cast<std::size_t>(c);
      double v;
      if (depth == 16) {
        const std::uint16_t s = static_cast<std::uint16_t>(pixels[2 * idx] | (pixels[2 * idx + 1] << 8));
        v = s / 65535.0;
      } else {
        v = pixels[idx] / 255.0;
      }
      img.data[n * static_cast<std::size_t>(c) + i] = v;
    }
  }
  return img;
}

void png_write_callback(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void png_flush_callback(png_structp) {}

bool png_encode_raw(const std::uint8_t* interleaved, png_uint_32 width, png_uint_32 height, int channels,
                    std::vector<std::uint8_t>* out) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_callback,
                                            png_warning_callback);
  if (png == nullptr) return false;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_set_write_fn(png, out, png_write_callback, png_flush_callback);
  png_set_IHDR(png, info, width, height, 8, channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const std::size_t stride = static_cast<std::size_t>(width) * static_cast<std::size_t>(channels);
  for (png_uint_32 y = 0; y < height; ++y)
    png_write_row(png, const_cast<png_bytep>(interleaved + y * stride));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

std::vector<std::uint8_t> interleave_8bit(const Image& img) {
  const std::size_t n = img.plane_size();
  std::vector<std::uint8_t> buf(n * static_cast<std::size_t>(img.channels));
  for (std::size_t i = 0; i < n; ++i)
    for (int c = 0; c < img.channels; ++c)
      buf[i * static_cast<std::size_t>(img.channels) + static_cast<std::size_t>(c)] =
          quantize_8bit(img.data[n * static_cast<std::size_t>(c) + i]);
  return buf;
}

// ---------------------------------------------------------------------------
// PPM / PGM

class PnmReader {
 public:
  explicit PnmReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  long next_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_]))
      fail(ErrorCode::kCorrupt, "malformed PNM header");
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > (1L << 30)) fail(ErrorCode::kCorrupt, "PNM header value out of range");
      ++pos_;
    }
    return value;
  }

  // Exactly one whitespace byte separates the header from raster data.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) fail(ErrorCode::kCorrupt, "malformed PNM header");
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

Image decode_pnm(std::span<const std::uint8_t> bytes) {
  const int channels = bytes[1] == '6' ? 3 : 1;
  PnmReader reader(bytes);
  const long width = reader.next_int();
  const long height = reader.next_int();
  const long maxval = reader.next_int();
  if (width <= 0 || height <= 0) fail(ErrorCode::kCorrupt, "PNM has zero dimension");
  if (maxval <= 0 || maxval > 65535) fail(ErrorCode::kCorrupt, "PNM maxval out of range");
  const std::size_t offset = reader.raster_offset();
  const std::size_t bps = maxval > 255 ? 2 : 1;
  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() < offset + n * static_cast<std::size_t>(channels) * bps)
    fail(ErrorCode::kCorrupt, "PNM raster truncated");

  Image img(static_cast<int>(width), static_cast<int>(height), channels);
  const std::uint8_t* p = bytes.data() + offset;
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < channels; ++c) {
      unsigned sample = bps == 2 ? (static_cast<unsigned>(p[0]) << 8) | p[1] : p[0];
      p += bps;
      if (sample > static_cast<unsigned>(maxval)) fail(ErrorCode::kCorrupt, "PNM sample exceeds maxval");
      img.data[n * static_cast<std::size_t>(c) + i] = static_cast<double>(sample) / static_cast<double>(maxval);
    }
  }
  return img;
}

// ---------------------------------------------------------------------------
// JPEG

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit_callback(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

void jpeg_silent_output(j_common_ptr) {}

bool jpeg_decode_raw(std::span<const std::uint8_t> bytes, JpegErrorManager* err, std::vector<std::uint8_t>* pixels,
                     int* width, int* height, int* channels) {
  jpeg_decompress_struct cinfo;
  cinfo.err = jpeg_std_error(&err->base);
  err->base.error_exit = jpeg_error_exit_callback;
  err->base.output_message = jpeg_silent_output;
  if (setjmp(err->jump)) {
    jpeg_destroy_decompress(&cinfo);
    return false;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = cinfo.num_components == 1 ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_start_decompress(&cinfo);
  *width = static_cast<int>(cinfo.output_width);
  *height = static_cast<int>(cinfo.output_height);
  *channels = cinfo.output_components;
  const std::size_t stride = static_cast<std::size_t>(*width) * static_cast<std::size_t>(*channels);
  pixels->resize(stride * static_cast<std::size_t>(*height));
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = pixels->data() + cinfo.output_scanline * stride;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return true;
}

Image decode_jpeg(std::span<const std::uint8_t> bytes) {
  JpegErrorManager err{};
  std::vector<std::uint8_t> pixels;
  int width = 0, height = 0, channels = 0;
  if (!jpeg_decode_raw(bytes, &err, &pixels, &width, &height, &channels))
    fail(ErrorCode::kCorrupt, std::string("JPEG decode failed: ") + err.message);
  if (channels != 1 && channels != 3) fail(ErrorCode::kUnsupportedFormat, "unsupported JPEG component count");
  Image img(width, height, channels);
  const std::size_t n = img.plane_size();
  for (std::size_t i = 0; i < n; ++i)
    for (int c = 0; c < channels; ++c)
      img.data[n * static_cast<std::size_t>(c) + i] =
          pixels[i * static_cast<std::size_t>(channels) + static_cast<std::size_t>(c)] / 255.0;
  return img;
}

bool jpeg_encode_raw(const std::uint8_t* interleaved, int width, int height, int channels, int quality,
                     JpegErrorManager* err, unsigned char** out, unsigned long* out_size) {
  jpeg_compress_struct cinfo;
  cinfo.err = jpeg_std_error(&err->base);
  err->base.error_exit = jpeg_error_exit_callback;
  err->base.output_message = jpeg_silent_output;
  if (setjmp(err->jump)) {
    jpeg_destroy_compress(&cinfo);
    return false;
  }
  jpeg_create_compress(&cinfo);
  jpeg_mem_dest(&cinfo, out, out_size);
  cinfo.image_width = static_cast<JDIMENSION>(width);
  cinfo.image_height = static_cast<JDIMENSION>(height);
  cinfo.input_components = channels;
  cinfo.in_color_space = channels == 3 ? JCS_RGB : JCS_GRAYSCALE;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  const std::size_t stride = static_cast<std::size_t>(width) * static_cast<std::size_t>(channels);
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW row = const_cast<JSAMPROW>(interleaved + cinfo.next_scanline * stride);
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
  return true;
}

}  // namespace

Image decode_image(std::span<const std::uint8_t> bytes) {
  static constexpr std::array<std::uint8_t, 8> kPngSignature = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
  if (bytes.size() >= 8 && std::equal(kPngSignature.begin(), kPngSignature.end(), bytes.begin()))
    return decode_png(bytes);
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '6' || bytes[1] == '5')) return decode_pnm(bytes);
  if (bytes.size() >= 3 && bytes[0] == 0xff && bytes[1] == 0xd8 && bytes[2] == 0xff) return decode_jpeg(bytes);
  fail(ErrorCode::kUnsupportedFormat, "unrecognized image signature");
}

Image load_image(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return decode_image(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_png(const Image& img) {
  validate(img);
  const auto interleaved = interleave_8bit(img);
  std::vector<std::uint8_t> out;
  if (!png_encode_raw(interleaved.data(), static_cast<png_uint_32>(img.width),
                      static_cast<png_uint_32>(img.height), img.channels, &out))
    fail(ErrorCode::kIo, "PNG encode failed");
  return out;
}

std::vector<std::uint8_t> encode_ppm(const Image& img) {
  validate(img);
  const std::string header =
      (img.channels == 3 ? "P6\n" : "P5\n") + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  const auto interleaved = interleave_8bit(img);
  out.insert(out.end(), interleaved.begin(), interleaved.end());
  return out;
}

std::vector<std::uint8_t> encode_jpeg(const Image& img, int quality) {
  validate(img);
  require(quality >= 1 && quality <= 100, "JPEG quality must be in [1,100]");
  const auto interleaved = interleave_8bit(img);
  JpegErrorManager err{};
  unsigned char* buffer = nullptr;
  unsigned long size = 0;
  const bool ok = jpeg_encode_raw(interleaved.data(), img.width, img.height, img.channels, quality, &err,
                                  &buffer, &size);
  std::vector<std::uint8_t> out;
  if (ok) out.assign(buffer, buffer + size);
  std::free(buffer);
  if (!ok) fail(ErrorCode::kIo, std::string("JPEG encode failed: ") + err.message);
  return out;
}

void save_image(const Image& img, const std::filesystem::path& path) {
  const std::string ext = lower_ext(path);
  if (ext == ".png") {
    write_file(path, encode_png(img));
  } else if (ext == ".ppm" || ext == ".pgm") {
    write_file(path, encode_ppm(img));
  } else {
    fail(ErrorCode::kUnsupportedFormat, "cannot infer output format from " + path.string());
  }
}

bool has_image_extension(const std::filesystem::path& path) {
  const std::string ext = lower_ext(path);
  return ext == ".png" || ext == ".ppm" || ext == ".pgm" || ext == ".jpg" || ext == ".jpeg";
}

}  // namespace wmbench
