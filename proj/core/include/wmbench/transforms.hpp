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

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace wmbench {

using Grid = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// ---------------------------------------------------------------------------
// Single-level orthonormal Haar DWT. For the 2x2 cell
//   a b
//   c d
// ll = (a+b+c+d)/2, hl = (a-b+c-d)/2 (horizontal detail),
// lh = (a+b-c-d)/2 (vertical detail), hh = (a-b-c+d)/2.

struct Subbands {
  Grid ll, lh, hl, hh;
};

Subbands dwt2(const Grid& grid);
Grid idwt2(const Subbands& bands);

// ---------------------------------------------------------------------------
// Orthonormal DCT-II.

// Rows are basis vectors: D(k, i) = a_k cos(pi (2i+1) k / 2n).
const Grid& dct_matrix(int n);

Grid dct2(const Grid& grid);
Grid idct2(const Grid& coeffs);
// Fixed 8x8 variants; anything else is rejected.
Grid dct2_block(const Grid& block);
Grid idct2_block(const Grid& coeffs);

// ---------------------------------------------------------------------------
// SVD by one-sided Jacobi rotations.

struct SvdResult {
  Grid u;             // m x k, orthonormal columns
  Eigen::VectorXd s;  // k = min(m, n), non-increasing, non-negative
  Grid v;             // n x k, orthonormal columns
};

SvdResult svd(const Grid& matrix);
Grid reconstruct(const SvdResult& svd);

// ---------------------------------------------------------------------------
// 2-D FFT on power-of-two sides. Forward is unnormalized, inverse carries
// the 1/N factor.

struct ComplexGrid {
  Grid real;
  Grid imag;

  ComplexGrid() = default;
  ComplexGrid(Eigen::Index rows, Eigen::Index cols)
      : real(Grid::Zero(rows, cols)), imag(Grid::Zero(rows, cols)) {}

  Eigen::Index rows() const { return real.rows(); }
  Eigen::Index cols() const { return real.cols(); }
  std::complex<double> at(Eigen::Index r, Eigen::Index c) const { return {real(r, c), imag(r, c)}; }
  void set(Eigen::Index r, Eigen::Index c, std::complex<double> z) {
    real(r, c) = z.real();
    imag(r, c) = z.imag();
  }
};

bool is_power_of_two(Eigen::Index n);

ComplexGrid fft2(const Grid& grid);
ComplexGrid fft2(const ComplexGrid& grid);
ComplexGrid ifft2(const ComplexGrid& spectrum);

// Moves the DC bin to (rows/2, cols/2); ifftshift undoes it for any size.
ComplexGrid fftshift(const ComplexGrid& grid);
ComplexGrid ifftshift(const ComplexGrid& grid);
Grid fftshift(const Grid& grid);
Grid ifftshift(const Grid& grid);

// ---------------------------------------------------------------------------
// Annulus over a centered (fftshift-ed) square spectrum.

struct RingMask {
  int size = 0;
  double inner_radius = 0.0;
  double outer_radius = 0.0;
  std::vector<std::uint8_t> mask;  // row-major, size x size

  bool at(int row, int col) const { return mask[static_cast<std::size_t>(row) * size + col] != 0; }
  int count() const;
};

// True where inner <= dist((row, col), (size/2, size/2)) < outer.
// Requires 0 <= inner < outer <= size/2.
RingMask make_ring_mask(int size, double inner_radius, double outer_radius);

}  // namespace wmbench
