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

#include <cstddef>
#include <span>
#include <vector>

namespace wmbench {

// Planar floating-point raster. Samples are nominally in [0, 1]; public
// operations that produce pixels clamp before returning. Some internal
// stages (diffusion states, YUV planes) reuse the type without the range
// guarantee.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<double> data;

  Image() = default;
  Image(int width, int height, int channels, double fill = 0.0);

  std::size_t plane_size() const noexcept {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  bool empty() const noexcept { return data.empty(); }

  std::span<double> plane(int c) noexcept {
    return {data.data() + plane_size() * static_cast<std::size_t>(c), plane_size()};
  }
  std::span<const double> plane(int c) const noexcept {
    return {data.data() + plane_size() * static_cast<std::size_t>(c), plane_size()};
  }

  double& at(int c, int y, int x) noexcept {
    return data[plane_size() * static_cast<std::size_t>(c) +
                static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                static_cast<std::size_t>(x)];
  }
  double at(int c, int y, int x) const noexcept {
    return data[plane_size() * static_cast<std::size_t>(c) +
                static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                static_cast<std::size_t>(x)];
  }

  bool same_shape(const Image& other) const noexcept {
    return width == other.width && height == other.height && channels == other.channels;
  }

  friend bool operator==(const Image&, const Image&) = default;
};

// Throws kInvalidArgument unless every sample is finite and the buffer
// length matches the geometry.
void validate(const Image& img);

void clamp_unit(Image& img) noexcept;
Image clamped(Image img) noexcept;

// BT.601 luma for RGB input; identity copy for grayscale.
Image to_gray(const Image& img);
// Replicates a gray plane into three channels; identity for RGB.
Image to_rgb(const Image& img);

Image center_crop_square(const Image& img);
// Bilinear resampling with pixel-center alignment (no corner alignment).
Image resize_bilinear(const Image& img, int width, int height);

// Separable Gaussian blur with edge replication. `radius` 2 gives a 5x5
// kernel.
Image gaussian_blur(const Image& img, double sigma, int radius);

}  // namespace wmbench
