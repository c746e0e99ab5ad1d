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

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "test_support.hpp"
#include "wmbench/error.hpp"
#include "wmbench/transforms.hpp"

namespace wmbench {
namespace {

using testing::random_grid;
constexpr double kPi = std::numbers::pi;

double max_abs(const Grid& g) { return g.cwiseAbs().maxCoeff(); }

// Direct O(n^4) evaluation of the 2-D DFT.
ComplexGrid naive_dft(const Grid& x) {
  const auto rows = x.rows(), cols = x.cols();
  ComplexGrid out(rows, cols);
  for (Eigen::Index u = 0; u < rows; ++u)
    for (Eigen::Index v = 0; v < cols; ++v) {
      std::complex<double> acc = 0.0;
      for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
          acc += x(r, c) * std::polar(1.0, -2.0 * kPi * (double(u * r) / rows + double(v * c) / cols));
      out.set(u, v, acc);
    }
  return out;
}

// Direct evaluation of the orthonormal 2-D DCT-II.
Grid naive_dct(const Grid& x) {
  const auto n = x.rows();
  auto a = [n](Eigen::Index k) { return k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n); };
  Grid out(n, n);
  for (Eigen::Index u = 0; u < n; ++u)
    for (Eigen::Index v = 0; v < n; ++v) {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
          acc += x(i, j) * std::cos(kPi * (2 * i + 1) * u / (2.0 * n)) * std::cos(kPi * (2 * j + 1) * v / (2.0 * n));
      out(u, v) = a(u) * a(v) * acc;
    }
  return out;
}

TEST(Haar, MatchesTheCellDefinition) {
  Grid g(2, 2);
  g << 1, 2, 3, 5;
  const Subbands b = dwt2(g);
  EXPECT_NEAR(b.ll(0, 0), (1 + 2 + 3 + 5) / 2.0, 1e-15);
  EXPECT_NEAR(b.hl(0, 0), (1 - 2 + 3 - 5) / 2.0, 1e-15);
  EXPECT_NEAR(b.lh(0, 0), (1 + 2 - 3 - 5) / 2.0, 1e-15);
  EXPECT_NEAR(b.hh(0, 0), (1 - 2 - 3 + 5) / 2.0, 1e-15);
}

TEST(Haar, RoundTripAndEnergy) {
  Rng rng(Seed{1});
  for (int trial = 0; trial < 20; ++trial) {
    const Grid g = random_grid(rng, 32, 48);
    const Subbands b = dwt2(g);
    EXPECT_LT(max_abs(idwt2(b) - g), 1e-9);
    const double energy = b.ll.squaredNorm() + b.lh.squaredNorm() + b.hl.squaredNorm() + b.hh.squaredNorm();
    EXPECT_NEAR(energy, g.squaredNorm(), 1e-9);
  }
  EXPECT_THROW(dwt2(Grid::Zero(3, 4)), Error);
}

TEST(Dct, MatchesTheNaiveOracleOn8x8) {
  Rng rng(Seed{2});
  for (int trial = 0; trial < 20; ++trial) {
    const Grid g = random_grid(rng, 8, 8);
    EXPECT_LT(max_abs(dct2_block(g) - naive_dct(g)), 1e-9);
    EXPECT_LT(max_abs(dct2(g) - naive_dct(g)), 1e-9);
  }
}

TEST(Dct, RoundTripAndOrthonormality) {
  Rng rng(Seed{3});
  for (int n : {8, 16, 5}) {
    const Grid& d = dct_matrix(n);
    EXPECT_LT(max_abs(d * d.transpose() - Grid::Identity(n, n)), 1e-12);
    const Grid g = random_grid(rng, n, n);
    EXPECT_LT(max_abs(idct2(dct2(g)) - g), 1e-9);
  }
  const Grid b = random_grid(rng, 8, 8);
  EXPECT_LT(max_abs(idct2_block(dct2_block(b)) - b), 1e-9);
  EXPECT_THROW(dct2_block(Grid::Zero(4, 4)), Error);
}

TEST(Svd, ReconstructsAndAgreesWithEigen) {
  Rng rng(Seed{4});
  for (auto [m, n] : {std::pair{4, 4}, std::pair{8, 5}, std::pair{5, 8}, std::pair{1, 6}}) {
    const Grid a = random_grid(rng, m, n);
    const SvdResult s = svd(a);
    EXPECT_LT(max_abs(reconstruct(s) - a) / max_abs(a), 1e-8);
    const Eigen::JacobiSVD<Eigen::MatrixXd> ref(a);
    ASSERT_EQ(s.s.size(), ref.singularValues().size());
    EXPECT_LT((s.s - ref.singularValues()).cwiseAbs().maxCoeff(), 1e-10);
    const auto k = s.s.size();
    EXPECT_LT(max_abs(s.u.transpose() * s.u - Grid::Identity(k, k)), 1e-10);
    EXPECT_LT(max_abs(s.v.transpose() * s.v - Grid::Identity(k, k)), 1e-10);
    for (Eigen::Index i = 1; i < k; ++i) EXPECT_GE(s.s[i - 1], s.s[i]);
  }
}

TEST(Svd, RankDeficientInput) {
  Grid a(3, 3);
  a << 1, 2, 3, 2, 4, 6, 1, 1, 1;
  const SvdResult s = svd(a);
  EXPECT_LT(max_abs(reconstruct(s) - a), 1e-10);
  EXPECT_NEAR(s.s[2], 0.0, 1e-10);
}

TEST(Fft, MatchesTheNaiveOracleOn16x16) {
  Rng rng(Seed{5});
  const Grid g = random_grid(rng, 16, 16);
  const ComplexGrid fast = fft2(g), slow = naive_dft(g);
  EXPECT_LT(max_abs(fast.real - slow.real), 1e-9);
  EXPECT_LT(max_abs(fast.imag - slow.imag), 1e-9);
}

TEST(Fft, RoundTripOnComplexInput) {
  Rng rng(Seed{6});
  ComplexGrid z(32, 64);
  z.real = random_grid(rng, 32, 64);
  z.imag = random_grid(rng, 32, 64);
  const ComplexGrid back = ifft2(fft2(z));
  EXPECT_LT(max_abs(back.real - z.real), 1e-9);
  EXPECT_LT(max_abs(back.imag - z.imag), 1e-9);
  EXPECT_THROW(fft2(Grid::Zero(12, 16)), Error);
}

TEST(Fft, RealInputHasHermitianSpectrum) {
  Rng rng(Seed{7});
  const ComplexGrid f = fft2(random_grid(rng, 16, 16));
  for (int u = 0; u < 16; ++u)
    for (int v = 0; v < 16; ++v) {
      const auto a = f.at(u, v), b = std::conj(f.at((16 - u) % 16, (16 - v) % 16));
      EXPECT_LT(std::abs(a - b), 1e-9);
    }
}

TEST(Fftshift, CentresDcAndInverts) {
  Rng rng(Seed{8});
  for (int n : {8, 7}) {
    const Grid g = random_grid(rng, n, n);
    const Grid s = fftshift(g);
    EXPECT_EQ(s(n / 2, n / 2), g(0, 0));
    EXPECT_EQ(ifftshift(s), g);
  }
}

TEST(RingMask, CountsAndBounds) {
  const RingMask m = make_ring_mask(64, 4.0, 10.0);
  int count = 0;
  for (int r = 0; r < 64; ++r)
    for (int c = 0; c < 64; ++c) {
      const double d = std::hypot(r - 32.0, c - 32.0);
      EXPECT_EQ(m.at(r, c), d >= 4.0 && d < 10.0);
      count += m.at(r, c);
    }
  EXPECT_EQ(m.count(), count);
  EXPECT_THROW(make_ring_mask(64, 10.0, 4.0), Error);
  EXPECT_THROW(make_ring_mask(64, 4.0, 33.0), Error);
}

}  // namespace
}  // namespace wmbench
