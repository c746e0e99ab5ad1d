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

#include "wmbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wmbench/error.hpp"
#include "wmbench/paraphrase_client.hpp"
#include "wmbench/transforms.hpp"

namespace wmbench {

double bit_accuracy(const WatermarkBits& a, const WatermarkBits& b) {
  require(a.size() == b.size(), "bit_accuracy: payload lengths differ");
  require(a.size() > 0, "bit_accuracy: empty payload");
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a.bits[i] == b.bits[i];
  return static_cast<double>(same) / static_cast<double>(a.size());
}

double psnr(const Image& a, const Image& b) {
  require(a.same_shape(b), "psnr: shape mismatch");
  require(!a.empty(), "psnr: empty image");
  double se = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double d = a.data[i] - b.data[i];
    se += d * d;
  }
  if (se == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(static_cast<double>(a.data.size()) / se);
}

namespace {

// Summed-area table with a zero row and column in front.
std::vector<double> integral(std::span<const double> p, int w, int h) {
  std::vector<double> s(static_cast<std::size_t>(w + 1) * (h + 1), 0.0);
  for (int y = 0; y < h; ++y) {
    double row = 0.0;
    for (int x = 0; x < w; ++x) {
      row += p[static_cast<std::size_t>(y) * w + x];
      s[static_cast<std::size_t>(y + 1) * (w + 1) + x + 1] = s[static_cast<std::size_t>(y) * (w + 1) + x + 1] + row;
    }
  }
  return s;
}

double box(const std::vector<double>& s, int w, int x, int y, int bw, int bh) {
  const auto at = [&](int yy, int xx) { return s[static_cast<std::size_t>(yy) * (w + 1) + xx]; };
  return at(y + bh, x + bw) - at(y, x + bw) - at(y + bh, x) + at(y, x);
}

}  // namespace

double ssim(const Image& a, const Image& b) {
  require(a.same_shape(b), "ssim: shape mismatch");
  require(!a.empty(), "ssim: empty image");
  if (a == b) return 1.0;
  constexpr double c1 = 0.01 * 0.01, c2 = 0.03 * 0.03;
  const int w = a.width, h = a.height;
  const int bw = std::min(8, w), bh = std::min(8, h);
  const double n = static_cast<double>(bw) * bh;
  double total = 0.0;
  long windows = 0;
  std::vector<double> aa(a.plane_size()), bb(a.plane_size()), ab(a.plane_size());
  for (int c = 0; c < a.channels; ++c) {
    const auto pa = a.plane(c), pb = b.plane(c);
    for (std::size_t i = 0; i < aa.size(); ++i) {
      aa[i] = pa[i] * pa[i];
      bb[i] = pb[i] * pb[i];
      ab[i] = pa[i] * pb[i];
    }
    const auto sa = integral(pa, w, h), sb = integral(pb, w, h);
    const auto saa = integral(aa, w, h), sbb = integral(bb, w, h), sab = integral(ab, w, h);
    for (int y = 0; y + bh <= h; ++y)
      for (int x = 0; x + bw <= w; ++x) {
        const double ma = box(sa, w, x, y, bw, bh) / n, mb = box(sb, w, x, y, bw, bh) / n;
        // Clamp tiny negative variances from cancellation.
        const double va = std::max(0.0, box(saa, w, x, y, bw, bh) / n - ma * ma);
        const double vb = std::max(0.0, box(sbb, w, x, y, bw, bh) / n - mb * mb);
        const double cov = box(sab, w, x, y, bw, bh) / n - ma * mb;
        total += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
        ++windows;
      }
  }
  return total / static_cast<double>(windows);
}

std::vector<double> default_embedding(const Image& img) {
  validate(img);
  const Image small = resize_bilinear(to_gray(img), 32, 32);
  Grid g(32, 32);
  std::copy(small.data.begin(), small.data.end(), g.data());
  const Grid d = dct2(g);
  std::vector<double> v;
  v.reserve(63);
  double norm = 0.0;
  for (int u = 0; u < 8; ++u)
    for (int k = 0; k < 8; ++k) {
      if (u == 0 && k == 0) continue;
      v.push_back(d(u, k));
      norm += d(u, k) * d(u, k);
    }
  norm = std::sqrt(norm);
  // Below this the image is flat up to rounding noise.
  if (norm < 1e-12) return std::vector<double>(63, 0.0);
  for (double& x : v) x /= norm;
  return v;
}

std::vector<double> PixelEmbedder::embed(const Image& img) const {
  validate(img);
  const Image small = resize_bilinear(to_gray(img), 8, 8);
  return small.data;
}

std::vector<double> RemoteEmbedder::embed(const Image& img) const { return client_->embedding(img); }

namespace {

double sq_dist(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

void check_sets(std::span<const std::vector<double>> a, std::span<const std::vector<double>> b) {
  require(a.size() >= 2 && b.size() >= 2, "MMD needs at least two samples per set");
  const std::size_t dim = a.front().size();
  require(dim > 0, "MMD needs non-empty feature vectors");
  for (const auto& v : a) require(v.size() == dim, "MMD feature vectors differ in length");
  for (const auto& v : b) require(v.size() == dim, "MMD feature vectors differ in length");
}

}  // namespace

double median_bandwidth(std::span<const std::vector<double>> a, std::span<const std::vector<double>> b) {
  std::vector<const std::vector<double>*> pool;
  for (const auto& v : a) pool.push_back(&v);
  for (const auto& v : b) pool.push_back(&v);
  std::vector<double> d;
  d.reserve(pool.size() * (pool.size() - 1) / 2);
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); ++j) d.push_back(std::sqrt(sq_dist(*pool[i], *pool[j])));
  if (d.empty()) return 1.0;
  const auto mid = d.begin() + static_cast<std::ptrdiff_t>(d.size() / 2);
  std::nth_element(d.begin(), mid, d.end());
  double m = *mid;
  if (d.size() % 2 == 0) m = 0.5 * (m + *std::max_element(d.begin(), mid));
  return m > 0.0 ? m : 1.0;
}

double mmd_squared(std::span<const std::vector<double>> a, std::span<const std::vector<double>> b,
                   std::optional<double> bandwidth) {
  check_sets(a, b);
  const double bw = bandwidth ? *bandwidth : median_bandwidth(a, b);
  require(bw > 0.0 && std::isfinite(bw), "MMD bandwidth must be positive");
  const double inv = 1.0 / (2.0 * bw * bw);
  const auto mean_kernel = [&](std::span<const std::vector<double>> x, std::span<const std::vector<double>> y) {
    double s = 0.0;
    for (const auto& u : x)
      for (const auto& v : y) s += std::exp(-sq_dist(u, v) * inv);
    return s / (static_cast<double>(x.size()) * static_cast<double>(y.size()));
  };
  return mean_kernel(a, a) + mean_kernel(b, b) - 2.0 * mean_kernel(a, b);
}

double mmd_distortion(std::span<const Image> a, std::span<const Image> b, const Embedder& embedder,
                      std::optional<double> bandwidth) {
  std::vector<std::vector<double>> ea, eb;
  for (const auto& img : a) ea.push_back(embedder.embed(img));
  for (const auto& img : b) eb.push_back(embedder.embed(img));
  return mmd_squared(ea, eb, bandwidth);
}

}  // namespace wmbench
