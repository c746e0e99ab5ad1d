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

#include "wmbench/chacha20.hpp"

#include <array>
#include <bit>

#include "wmbench/error.hpp"

namespace wmbench {
namespace {

std::uint32_t load32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

void quarter_round(std::array<std::uint32_t, 16>& x, int a, int b, int c, int d) {
  x[a] += x[b]; x[d] = std::rotl(x[d] ^ x[a], 16);
  x[c] += x[d]; x[b] = std::rotl(x[b] ^ x[c], 12);
  x[a] += x[b]; x[d] = std::rotl(x[d] ^ x[a], 8);
  x[c] += x[d]; x[b] = std::rotl(x[b] ^ x[c], 7);
}

void check_sizes(std::span<const std::uint8_t> key, std::span<const std::uint8_t> nonce) {
  require(key.size() == 32, "chacha20: key must be 32 bytes");
  require(nonce.size() == 12, "chacha20: nonce must be 12 bytes");
}

}  // namespace

void chacha20_block(std::span<const std::uint8_t> key, std::span<const std::uint8_t> nonce,
                    std::uint32_t counter, std::span<std::uint8_t, 64> out) {
  check_sizes(key, nonce);
  std::array<std::uint32_t, 16> state{0x61707865, 0x3320646e, 0x79622d32, 0x6b206574};
  for (int i = 0; i < 8; ++i) state[4 + i] = load32(key.data() + 4 * i);
  state[12] = counter;
  for (int i = 0; i < 3; ++i) state[13 + i] = load32(nonce.data() + 4 * i);

  auto x = state;
  for (int round = 0; round < 10; ++round) {
    quarter_round(x, 0, 4, 8, 12);
    quarter_round(x, 1, 5, 9, 13);
    quarter_round(x, 2, 6, 10, 14);
    quarter_round(x, 3, 7, 11, 15);
    quarter_round(x, 0, 5, 10, 15);
    quarter_round(x, 1, 6, 11, 12);
    quarter_round(x, 2, 7, 8, 13);
    quarter_round(x, 3, 4, 9, 14);
  }
  for (int i = 0; i < 16; ++i) {
    const std::uint32_t v = x[i] + state[i];
    for (int b = 0; b < 4; ++b) out[4 * i + b] = static_cast<std::uint8_t>(v >> (8 * b));
  }
}

std::vector<std::uint8_t> chacha20_keystream(std::span<const std::uint8_t> key,
                                             std::span<const std::uint8_t> nonce,
                                             std::uint32_t counter, std::size_t length) {
  check_sizes(key, nonce);
  std::vector<std::uint8_t> out(length);
  std::array<std::uint8_t, 64> block{};
  for (std::size_t pos = 0; pos < length; pos += 64) {
    chacha20_block(key, nonce, counter++, block);
    const std::size_t n = std::min<std::size_t>(64, length - pos);
    std::copy_n(block.begin(), n, out.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  return out;
}

}  // namespace wmbench
