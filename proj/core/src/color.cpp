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

#include "wmbench/color.hpp"

#include <Eigen/Dense>

#include "wmbench/error.hpp"

namespace wmbench {
namespace {

const Eigen::Matrix3d& forward_matrix() {
  static const Eigen::Matrix3d m = [] {
    Eigen::Matrix3d f;
    f << 0.299, 0.587, 0.114,
        -0.168735891647856, -0.331264108352144, 0.5,
        0.5, -0.418687589158345, -0.081312410841655;
    return f;
  }();
  return m;
}

// Exact inverse of the forward matrix, so the roundtrip error is at the
// level of double rounding rather than of truncated published constants.
const Eigen::Matrix3d& inverse_matrix() {
  static const Eigen::Matrix3d m = forward_matrix().inverse();
  return m;
}

Image apply(const Image& in, const Eigen::Matrix3d& m, const Eigen::Vector3d& pre, const Eigen::Vector3d& post) {
  if (in.channels != 3) fail(ErrorCode::kInvalidArgument, "color conversion requires 3 channels");
  Image out(in.width, in.height, 3);
  const std::size_t n = in.plane_size();
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector3d v(in.data[i] + pre[0], in.data[n + i] + pre[1], in.data[2 * n + i] + pre[2]);
    const Eigen::Vector3d r = m * v + post;
    out.data[i] = r[0];
    out.data[n + i] = r[1];
    out.data[2 * n + i] = r[2];
  }
  return out;
}

}  // namespace

Image rgb_to_yuv(const Image& rgb) {
  return apply(rgb, forward_matrix(), Eigen::Vector3d::Zero(), Eigen::Vector3d(0.0, 0.5, 0.5));
}

Image yuv_to_rgb(const Image& yuv) {
  return apply(yuv, inverse_matrix(), Eigen::Vector3d(0.0, -0.5, -0.5), Eigen::Vector3d::Zero());
}

}  // namespace wmbench
