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

#include "wmbench/attacks.hpp"
#include "wmbench/metrics.hpp"
#include "wmbench/synthetic.hpp"

namespace {

using namespace wmbench;

void BM_SurrogateParaphrase(benchmark::State& state) {
  const Image img = synthetic_image(Seed{1}, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(surrogate_paraphrase(img, 0.6, 7.5, Seed{2}));
}
BENCHMARK(BM_SurrogateParaphrase)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Jpeg(benchmark::State& state) {
  const Image img = synthetic_image(Seed{1}, 256);
  for (auto _ : state) benchmark::DoNotOptimize(jpeg_compress(img, 50));
}
BENCHMARK(BM_Jpeg)->Unit(benchmark::kMillisecond);

void BM_Rotate(benchmark::State& state) {
  const Image img = synthetic_image(Seed{1}, 256);
  for (auto _ : state) benchmark::DoNotOptimize(rotate(img, 45.0));
}
BENCHMARK(BM_Rotate)->Unit(benchmark::kMillisecond);

void BM_MmdDistortion(benchmark::State& state) {
  std::vector<Image> a, b;
  for (std::uint64_t i = 0; i < 50; ++i) {
    a.push_back(synthetic_image(Seed{i}, 128));
    b.push_back(gaussian_noise(a.back(), 0.05, Seed{100 + i}));
  }
  for (auto _ : state) benchmark::DoNotOptimize(mmd_distortion(a, b, DctEmbedder()));
}
BENCHMARK(BM_MmdDistortion)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
