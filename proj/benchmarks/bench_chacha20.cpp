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

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "wmbench/chacha20.hpp"
#include "wmbench/gaussian_shading.hpp"

namespace {

using namespace wmbench;

void BM_Keystream(benchmark::State& state) {
  const std::vector<std::uint8_t> key(32, 7), nonce(12, 3);
  const auto len = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(chacha20_keystream(key, nonce, 0, len));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * len));
}
BENCHMARK(BM_Keystream)->Arg(64)->Arg(2048)->Arg(1 << 16);

// Full latent randomization: one keystream bit per latent element.
void BM_GsRandomize(benchmark::State& state) {
  const auto key = gs_key_generate(Seed{1});
  for (auto _ : state) benchmark::DoNotOptimize(gs_randomize(key));
}
BENCHMARK(BM_GsRandomize);

}  // namespace

BENCHMARK_MAIN();
