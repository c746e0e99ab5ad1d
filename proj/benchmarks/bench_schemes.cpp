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

#include "wmbench/schemes.hpp"
#include "wmbench/synthetic.hpp"

namespace {

using namespace wmbench;

void BM_Embed(benchmark::State& state) {
  const auto id = static_cast<SchemeId>(state.range(0));
  const auto scheme = make_scheme(generate_key(id, Seed{1}));
  const Image host = scheme->latent_based() ? scheme->make_carrier(Seed{2}) : synthetic_image(Seed{2}, 256);
  for (auto _ : state) benchmark::DoNotOptimize(scheme->embed(host));
  state.SetLabel(std::string(scheme_name(id)));
}

void BM_Statistic(benchmark::State& state) {
  const auto id = static_cast<SchemeId>(state.range(0));
  const auto scheme = make_scheme(generate_key(id, Seed{1}));
  const Image host = scheme->latent_based() ? scheme->make_carrier(Seed{2}) : synthetic_image(Seed{2}, 256);
  const Image marked = scheme->embed(host);
  for (auto _ : state) benchmark::DoNotOptimize(scheme->statistic(marked));
  state.SetLabel(std::string(scheme_name(id)));
}

BENCHMARK(BM_Embed)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Statistic)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
