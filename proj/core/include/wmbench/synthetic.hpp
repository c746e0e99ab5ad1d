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

#include <filesystem>

#include "wmbench/image.hpp"
#include "wmbench/random.hpp"

namespace wmbench {

// Procedural RGB scene: smooth colour gradients, a handful of soft-edged
// shapes and fine texture. Stands in for photographs where none are
// available (fixtures, offline tests). Deterministic in `seed`.
Image synthetic_image(Seed seed, int side);

// Writes `count` scenes as scene-NNN.png into `dir`.
void write_synthetic_corpus(const std::filesystem::path& dir, std::size_t count, int side, Seed seed);

}  // namespace wmbench
