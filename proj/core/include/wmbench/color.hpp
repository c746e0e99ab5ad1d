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

#include "wmbench/image.hpp"

namespace wmbench {

// Full-range BT.601. Chroma planes carry a +0.5 offset so that in-range RGB
// maps into [0,1]. Neither direction clamps.
Image rgb_to_yuv(const Image& rgb);
Image yuv_to_rgb(const Image& yuv);

}  // namespace wmbench
