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

#include <cstdint>
#include <span>
#include <vector>

namespace wmbench {

// ChaCha20, IETF variant: 256-bit key, 96-bit nonce, 32-bit block counter.
void chacha20_block(std::span<const std::uint8_t> key, std::span<const std::uint8_t> nonce,
                    std::uint32_t counter, std::span<std::uint8_t, 64> out);

// `length` keystream bytes starting at block `counter`. Throws
// kInvalidArgument for a key that is not 32 bytes or a nonce that is not 12.
std::vector<std::uint8_t> chacha20_keystream(std::span<const std::uint8_t> key,
                                             std::span<const std::uint8_t> nonce,
                                             std::uint32_t counter, std::size_t length);

}  // namespace wmbench
