// Copyright 2026 The FLSimCo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "flsimco/imaging/image.hpp"

#include <algorithm>
#include <cmath>

#include "flsimco/common/errors.hpp"

namespace flsimco::imaging {

Image::Image(std::size_t width, std::size_t height, std::size_t channels)
    : Image(width, height, channels, std::vector<double>(width * height * channels, 0.0)) {}

Image::Image(std::size_t width, std::size_t height, std::size_t channels, std::vector<double> pixels)
    : width_(width), height_(height), channels_(channels), pixels_(std::move(pixels)) {
  if (width == 0 || height == 0) throw ContractError("Image: dimensions must be positive");
  if (channels != 1 && channels != 3) throw ContractError("Image: channels must be 1 or 3");
  if (pixels_.size() != width * height * channels) throw ContractError("Image: pixel count mismatch");
  for (double v : pixels_) {
    if (!(v >= 0.0 && v <= 1.0)) throw ContractError("Image: pixel values must lie in [0, 1]");
  }
}

void Image::Clamp() {
  for (double& v : pixels_) v = std::clamp(v, 0.0, 1.0);
}

}  // namespace flsimco::imaging
