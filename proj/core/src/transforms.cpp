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

#include "wmbench/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

#include "wmbench/error.hpp"

namespace wmbench {

// ---------------------------------------------------------------------------
// Haar

Subbands dwt2(const Grid& g) {
  if (g.rows() % 2 != 0 || g.cols() % 2 != 0 || g.rows() == 0 || g.cols() == 0)
    fail(ErrorCode::kInvalidArgument, "dwt2 requires even, non-zero dimensions");
  const Eigen::Index h = g.rows() / 2, w = g.cols() / 2;
  Subbands b{Grid(h, w), Grid(h, w), Grid(h, w), Grid(h, w)};
  for (Eigen::Index i = 0; i < h; ++i) {
    for (Eigen::Index j = 0; j < w; ++j) {
      const double a = g(2 * i, 2 * j), bb = g(2 * i, 2 * j + 1);
      const double c = g(2 * i + 1, 2 * j), d = g(2 * i + 1, 2 * j + 1);
      b.ll(i, j) = 0.5 * (a + bb + c + d);
      b.hl(i, j) = 0.5 * (a - bb + c - d);
      b.lh(i, j) = 0.5 * (a + bb - c - d);
      b.hh(i, j) = 0.5 * (a - bb - c + d);
    }
  }
  return b;
}

Grid idwt2(const Subbands& b) {
  const Eigen::Index h = b.ll.rows(), w = b.ll.cols();
  for (const Grid* g : {&b.lh, &b.hl, &b.hh})
    if (g->rows() != h || g->cols() != w) fail(ErrorCode::kInvalidArgument, "idwt2 subband shapes differ");
  Grid out(2 * h, 2 * w);
  for (Eigen::Index i = 0; i < h; ++i) {
    for (Eigen::Index j = 0; j < w; ++j) {
      const double ll = b.ll(i, j), hl = b.hl(i, j), lh = b.lh(i, j), hh = b.hh(i, j);
      out(2 * i, 2 * j) = 0.5 * (ll + hl + lh + hh);
      out(2 * i, 2 * j + 1) = 0.5 * (ll - hl + lh - hh);
      out(2 * i + 1, 2 * j) = 0.5 * (ll + hl - lh - hh);
      out(2 * i + 1, 2 * j + 1) = 0.5 * (ll - hl - lh + hh);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// DCT

const Grid& dct_matrix(int n) {
  require(n > 0, "dct size must be positive");
  static std::mutex mu;
  static std::map<int, Grid> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Grid d(n, n);
  for (int k = 0; k < n; ++k) {
    const double a = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (int i = 0; i < n; ++i) d(k, i) = a * std::cos(std::numbers::pi * (2 * i + 1) * k / (2.0 * n));
  }
  return cache.emplace(n, std::move(d)).first->second;
}

Grid dct2(const Grid& g) {
  const Grid& dr = dct_matrix(static_cast<int>(g.rows()));
  const Grid& dc = dct_matrix(static_cast<int>(g.cols()));
  return dr * g * dc.transpose();
}

Grid idct2(const Grid& c) {
  const Grid& dr = dct_matrix(static_cast<int>(c.rows()));
  const Grid& dc = dct_matrix(static_cast<int>(c.cols()));
  return dr.transpose() * c * dc;
}

Grid dct2_block(const Grid& block) {
  if (block.rows() != 8 || block.cols() != 8) fail(ErrorCode::kInvalidArgument, "dct2_block requires an 8x8 block");
  return dct2(block);
}

Grid idct2_block(const Grid& coeffs) {
  if (coeffs.rows() != 8 || coeffs.cols() != 8) fail(ErrorCode::kInvalidArgument, "idct2_block requires an 8x8 block");
  return idct2(coeffs);
}

// ---------------------------------------------------------------------------
// SVD

namespace {

// Hestenes one-sided Jacobi on a tall matrix (rows >= cols).
SvdResult jacobi_svd_tall(const Grid& a_in) {
  const Eigen::Index m = a_in.rows(), n = a_in.cols();
  Eigen::MatrixXd a = a_in;
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  constexpr double kEps = 1e-15;
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double alpha = a.col(p).squaredNorm();
        const double beta = a.col(q).squaredNorm();
        const double gamma = a.col(p).dot(a.col(q));
        if (gamma == 0.0 || std::abs(gamma) <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (Eigen::Index i = 0; i < m; ++i) {
          const double ap = a(i, p), aq = a(i, q);
          a(i, p) = c * ap - s * aq;
          a(i, q) = s * ap + c * aq;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  Eigen::VectorXd sigma(n);
  for (Eigen::Index j = 0; j < n; ++j) sigma[j] = a.col(j).norm();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return sigma[x] > sigma[y]; });

  SvdResult r{Grid(m, n), Eigen::VectorXd(n), Grid(n, n)};
  const double tiny = std::max(1.0, sigma.maxCoeff()) * 1e-300;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index j = order[static_cast<std::size_t>(k)];
    r.s[k] = sigma[j];
    r.v.col(k) = v.col(j);
    if (sigma[j] > tiny) {
      r.u.col(k) = a.col(j) / sigma[j];
    } else {
      r.u.col(k).setZero();
    }
  }
  // Complete left vectors of null singular values to an orthonormal set so
  // U always has orthonormal columns.
  for (Eigen::Index k = 0; k < n; ++k) {
    if (r.s[k] > tiny) continue;
    for (Eigen::Index e = 0; e < m; ++e) {
      Eigen::VectorXd cand = Eigen::VectorXd::Unit(m, e);
      for (Eigen::Index j = 0; j < n; ++j)
        if (j != k) cand -= r.u.col(j).dot(cand) * Eigen::VectorXd(r.u.col(j));
      const double norm = cand.norm();
      if (norm > 1e-6) {
        r.u.col(k) = cand / norm;
        break;
      }
    }
  }
  return r;
}

}  // namespace

SvdResult svd(const Grid& matrix) {
  if (matrix.size() == 0) fail(ErrorCode::kInvalidArgument, "svd of an empty matrix");
  if (!matrix.allFinite()) fail(ErrorCode::kInvalidArgument, "svd input contains non-finite entries");
  if (matrix.rows() >= matrix.cols()) return jacobi_svd_tall(matrix);
  SvdResult t = jacobi_svd_tall(matrix.transpose());
  return SvdResult{std::move(t.v), std::move(t.s), std::move(t.u)};
}

Grid reconstruct(const SvdResult& r) { return r.u * r.s.asDiagonal() * r.v.transpose(); }

// ---------------------------------------------------------------------------
// FFT

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

namespace {

void fft1d(std::vector<std::complex<double>>& x, bool inverse) {
  const std::size_t n = x.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        // Twiddles from cos/sin directly; a running product accumulates error.
        const double a = ang * static_cast<double>(k);
        const std::complex<double> w(std::cos(a), std::sin(a));
        const std::complex<double> u = x[i + k];
        const std::complex<double> t = w * x[i + k + len / 2];
        x[i + k] = u + t;
        x[i + k + len / 2] = u - t;
      }
    }
  }
}

ComplexGrid transform(const ComplexGrid& in, bool inverse) {
  const Eigen::Index rows = in.rows(), cols = in.cols();
  if (!is_power_of_two(rows) || !is_power_of_two(cols))
    fail(ErrorCode::kInvalidArgument, "fft2 requires power-of-two sides");
  ComplexGrid out(rows, cols);
  std::vector<std::complex<double>> buf;
  std::vector<std::complex<double>> work(static_cast<std::size_t>(rows * cols));
  buf.resize(static_cast<std::size_t>(cols));
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) buf[static_cast<std::size_t>(c)] = in.at(r, c);
    fft1d(buf, inverse);
    for (Eigen::Index c = 0; c < cols; ++c) work[static_cast<std::size_t>(r * cols + c)] = buf[static_cast<std::size_t>(c)];
  }
  buf.resize(static_cast<std::size_t>(rows));
  const double scale = inverse ? 1.0 / static_cast<double>(rows * cols) : 1.0;
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) buf[static_cast<std::size_t>(r)] = work[static_cast<std::size_t>(r * cols + c)];
    fft1d(buf, inverse);
    for (Eigen::Index r = 0; r < rows; ++r) out.set(r, c, buf[static_cast<std::size_t>(r)] * scale);
  }
  return out;
}

Grid roll(const Grid& g, Eigen::Index dr, Eigen::Index dc) {
  const Eigen::Index rows = g.rows(), cols = g.cols();
  Grid out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) out((r + dr) % rows, (c + dc) % cols) = g(r, c);
  return out;
}

}  // namespace

ComplexGrid fft2(const Grid& grid) {
  ComplexGrid c(grid.rows(), grid.cols());
  c.real = grid;
  return transform(c, false);
}

ComplexGrid fft2(const ComplexGrid& grid) { return transform(grid, false); }
ComplexGrid ifft2(const ComplexGrid& spectrum) { return transform(spectrum, true); }

Grid fftshift(const Grid& g) { return roll(g, g.rows() / 2, g.cols() / 2); }
Grid ifftshift(const Grid& g) { return roll(g, (g.rows() + 1) / 2, (g.cols() + 1) / 2); }

ComplexGrid fftshift(const ComplexGrid& g) {
  ComplexGrid out;
  out.real = fftshift(g.real);
  out.imag = fftshift(g.imag);
  return out;
}

ComplexGrid ifftshift(const ComplexGrid& g) {
  ComplexGrid out;
  out.real = ifftshift(g.real);
  out.imag = ifftshift(g.imag);
  return out;
}

// ---------------------------------------------------------------------------
// Ring masks

int RingMask::count() const {
  return static_cast<int>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

RingMask make_ring_mask(int size, double inner_radius, double outer_radius) {
  require(size > 0, "ring mask size must be positive");
  if (!(inner_radius >= 0.0 && inner_radius < outer_radius && outer_radius <= size / 2.0))
    fail(ErrorCode::kInvalidArgument, "ring radii must satisfy 0 <= inner < outer <= size/2");
  RingMask m{size, inner_radius, outer_radius, std::vector<std::uint8_t>(static_cast<std::size_t>(size) * size, 0)};
  const double center = size / 2;
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      const double d = std::hypot(r - center, c - center);
      if (d >= inner_radius && d < outer_radius) m.mask[static_cast<std::size_t>(r) * size + c] = 1;
    }
  }
  return m;
}

}  // namespace wmbench
