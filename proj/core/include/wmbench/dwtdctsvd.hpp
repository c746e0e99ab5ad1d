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

#include "wmbench/transforms.hpp"
#include "wmbench/watermark.hpp"

namespace wmbench {

// Smallest accepted side: the half-resolution subband must hold 8 blocks
// per side.
inline constexpr int kDdsMinSide = 128;

// Quantization-index modulation on the largest singular value S0 of an 8x8
// DCT block. Bit b sits on the lattice step * (2k + b); extraction is the
// parity of round(S0 / step).
Grid qim_embed_block(const Grid& coeffs, int bit, double step);
int qim_extract_block(const Grid& coeffs, double step);

// Luma of an RGB image -> Haar subband -> 8x8 DCT blocks -> S0 per block.
// Bits go round-robin over blocks in raster order. The lattice step of a
// block is embed_strength times the mean S0 of its (up to eight)
// neighbours, which makes the mark invariant to a global gain such as a
// brightness change. Embedding is iterated so that neighbour updates and
// clipping to [0, 1] are accounted for.
Image dds_embed(const WatermarkBits& bits, const Image& img, const DwtDctSvdParams& params);

// Majority vote over every block carrying the same bit index (ties -> 0).
WatermarkBits dds_extract(const Image& img, std::size_t n_bits, const DwtDctSvdParams& params);

double dds_statistic(const DwtDctSvdPayload& key, const Image& img);

DwtDctSvdPayload dds_key_generate(Seed seed, std::size_t payload_bits = kDefaultPayloadBits,
                                  DwtDctSvdParams params = {});

}  // namespace wmbench
