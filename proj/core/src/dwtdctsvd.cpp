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

#include "wmbench/dwtdctsvd.hpp"

#include <cmath>

#include "wmbench/color.hpp"
#include "wmbench/error.hpp"
#include "wmbench/metrics.hpp"

namespace wmbench {
namespace {

constexpr int kBlock = 8;
constexpr int kMaxPasses = 20;

void check_params(const DwtDctSvdParams& p) {
  require(p.embed_strength > 0.0 && std::isfinite(p.embed_strength), "embed_strength must be positive");
}

void check_image(const Image& img) {
  validate(img);
  require(img.channels == 3, "DwtDctSVD embeds in luma and needs an RGB image");
  if (img.width < kDdsMinSide || img.height < kDdsMinSide)
    fail(ErrorCode::kSizeTooSmall, "DwtDctSVD needs at least 128x128 pixels");
}

Grid& band(Subbands& s, Subband which) {
  switch (which) {
    case Subband::kHL: return s.hl;
    case Subband::kLH: return s.lh;
    case Subband::kLL: break;
  }
  return s.ll;
}

// Working view: the largest region of the luma plane whose sides are
// multiples of 16, starting at the origin.
struct Layout {
  int rows = 0, cols = 0;  // blocks per side in the subband
  int count() const { return rows * cols; }
};

Layout layout_for(const Image& img) { return {img.height / (2 * kBlock), img.width / (2 * kBlock)}; }

Grid luma_region(const Image& yuv, const Layout& l) {
  Grid g(2 * kBlock * l.rows, 2 * kBlock * l.cols);
  for (Eigen::Index y = 0; y < g.rows(); ++y)
    for (Eigen::Index x = 0; x < g.cols(); ++x) g(y, x) = yuv.at(0, static_cast<int>(y), static_cast<int>(x));
  return g;
}

struct BlockState {
  std::vector<Grid> coeffs;
  std::vector<double> s0;
};

BlockState analyze(const Grid& sub, const Layout& l) {
  BlockState st;
  st.coeffs.reserve(static_cast<std::size_t>(l.count()));
  for (int by = 0; by < l.rows; ++by)
    for (int bx = 0; bx < l.cols; ++bx) {
      Grid c = dct2_block(sub.block(by * kBlock, bx * kBlock, kBlock, kBlock));
      st.s0.push_back(svd(c).s(0));
      st.coeffs.push_back(std::move(c));
    }
  return st;
}

double neighbour_reference(const std::vector<double>& s0, const Layout& l, int by, int bx) {
  double sum = 0.0;
  int n = 0;
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx) {
      if (dy == 0 && dx == 0) continue;
      const int y = by + dy, x = bx + dx;
      if (y < 0 || x < 0 || y >= l.rows || x >= l.cols) continue;
      sum += s0[static_cast<std::size_t>(y) * l.cols + x];
      ++n;
    }
  return sum / n;
}

// Floor on the reference so that flat black regions still get a usable
// lattice (S0 of a block at luma 1/255 is ~0.06).
constexpr double kMinReference = 0.05;

double step_for(const std::vector<double>& s0, const Layout& l, int by, int bx, double strength) {
  return strength * std::max(neighbour_reference(s0, l, by, bx), kMinReference);
}

std::vector<int> block_bits(const Image& img, const DwtDctSvdParams& params, Layout& l) {
  const Image yuv = rgb_to_yuv(img);
  l = layout_for(img);
  Subbands sb = dwt2(luma_region(yuv, l));
  const BlockState st = analyze(band(sb, params.subband), l);
  std::vector<int> out(static_cast<std::size_t>(l.count()));
  for (int by = 0; by < l.rows; ++by)
    for (int bx = 0; bx < l.cols; ++bx) {
      const std::size_t k = static_cast<std::size_t>(by) * l.cols + bx;
      out[k] = qim_extract_block(st.coeffs[k], step_for(st.s0, l, by, bx, params.embed_strength));
    }
  return out;
}

}  // namespace

Grid qim_embed_block(const Grid& coeffs, int bit, double step) {
  require(coeffs.rows() == kBlock && coeffs.cols() == kBlock, "QIM block must be 8x8");
  require(step > 0.0, "QIM step must be positive");
  require(bit == 0 || bit == 1, "bit must be 0 or 1");
  const SvdResult d = svd(coeffs);
  const double s0 = d.s(0);
  // Nearest lattice point of the requested parity.
  double k = std::round((s0 / step - bit) / 2.0);
  double target = step * (2.0 * k + bit);
  if (target < 0.0) target += 2.0 * step;
  SvdResult m = d;
  m.s(0) = target;
  // Keep the ordering valid; S0 stays the largest value in practice because
  // the step is a small fraction of it.
  return reconstruct(m);
}

int qim_extract_block(const Grid& coeffs, double step) {
  require(step > 0.0, "QIM step must be positive");
  const double q = std::round(svd(coeffs).s(0) / step);
  return static_cast<int>(std::fmod(std::abs(q), 2.0));
}

Image dds_embed(const WatermarkBits& bits, const Image& img, const DwtDctSvdParams& params) {
  check_params(params);
  check_image(img);
  require(!bits.bits.empty(), "payload must have at least one bit");

  const Layout l = layout_for(img);
  Image out = img;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    Image yuv = rgb_to_yuv(out);
    const Grid region = luma_region(yuv, l);
    Subbands sb = dwt2(region);
    Grid& sub = band(sb, params.subband);
    const BlockState st = analyze(sub, l);

    bool clean = true;
    for (int by = 0; by < l.rows; ++by)
      for (int bx = 0; bx < l.cols; ++bx) {
        const std::size_t k = static_cast<std::size_t>(by) * l.cols + bx;
        const int bit = bits.bits[k % bits.size()];
        const double step = step_for(st.s0, l, by, bx, params.embed_strength);
        // Re-centre every block each pass; skip only when already on its
        // lattice point to keep the fixed point stable.
        const double q = st.s0[k] / step;
        const double target_q = 2.0 * std::round((q - bit) / 2.0) + bit;
        if (qim_extract_block(st.coeffs[k], step) != bit) clean = false;
        if (std::abs(q - target_q) < 1e-3) continue;
        sub.block(by * kBlock, bx * kBlock, kBlock, kBlock) = idct2_block(qim_embed_block(st.coeffs[k], bit, step));
      }
    if (clean && pass > 0) break;

    const Grid luma = idwt2(sb);
    for (Eigen::Index y = 0; y < luma.rows(); ++y)
      for (Eigen::Index x = 0; x < luma.cols(); ++x) yuv.at(0, static_cast<int>(y), static_cast<int>(x)) = luma(y, x);
    out = clamped(yuv_to_rgb(yuv));
  }
  return out;
}

WatermarkBits dds_extract(const Image& img, std::size_t n_bits, const DwtDctSvdParams& params) {
  check_params(params);
  check_image(img);
  require(n_bits >= 1, "payload must have at least one bit");
  Layout l;
  const std::vector<int> per_block = block_bits(img, params, l);
  std::vector<int> votes(n_bits, 0);
  for (std::size_t k = 0; k < per_block.size(); ++k) votes[k % n_bits] += per_block[k] ? 1 : -1;
  WatermarkBits out;
  out.bits.resize(n_bits);
  for (std::size_t i = 0; i < n_bits; ++i) out.bits[i] = votes[i] > 0 ? 1 : 0;
  return out;
}

double dds_statistic(const DwtDctSvdPayload& key, const Image& img) {
  return bit_accuracy(dds_extract(img, key.bits.size(), key.params), key.bits);
}

DwtDctSvdPayload dds_key_generate(Seed seed, std::size_t payload_bits, DwtDctSvdParams params) {
  check_params(params);
  Rng rng(seed);
  DwtDctSvdPayload key;
  key.bits = WatermarkBits::random(payload_bits, rng);
  key.params = params;
  return key;
}

}  // namespace wmbench
