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

#include "wmbench/random.hpp"
#include "wmbench/transforms.hpp"

namespace {

using namespace wmbench;

Grid noise_grid(Eigen::Index n) {
  Rng rng(Seed{1});
  Grid g(n, n);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = rng.normal();
  return g;
}

void BM_Dwt2(benchmark::State& state) {
  const Grid g = noise_grid(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(idwt2(dwt2(g)));
}
BENCHMARK(BM_Dwt2)->Arg(128)->Arg(256)->Arg(512);

void BM_Dct2(benchmark::State& state) {
  const Grid g = noise_grid(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dct2(g));
}
BENCHMARK(BM_Dct2)->Arg(64)->Arg(128)->Arg(256);

void BM_DctBlock(benchmark::State& state) {
  const Grid g = noise_grid(8);
  for (auto _ : state) benchmark::DoNotOptimize(dct2_block(g));
}
BENCHMARK(BM_DctBlock);

void BM_Fft2(benchmark::State& state) {
  const Grid g = noise_grid(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fft2(g));
}
BENCHMARK(BM_Fft2)->Arg(64)->Arg(128)->Arg(256);

void BM_Svd(benchmark::State& state) {
  const Grid g = noise_grid(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(svd(g));
}
BENCHMARK(BM_Svd)->Arg(4)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
