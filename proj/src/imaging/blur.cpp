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

#include "flsimco/imaging/blur.hpp"

#include <algorithm>
#include <cmath>

#include "flsimco/common/errors.hpp"

namespace flsimco::imaging {

void CameraParams::Validate() const {
  if (!(exposure_time > 0.0 && focal_length > 0.0 && pixel_unit > 0.0)) {
    throw ContractError("camera: exposure_time, focal_length and pixel_unit must be positive");
  }
}

BlurLevel ComputeBlurLevel(mobility::Velocity v, const CameraParams& camera) {
  camera.Validate();
  if (v.value < 0.0) throw ContractError("blur_level: velocity must be nonnegative");
  return BlurLevel{camera.constant() * v.value};
}

std::size_t BlurKernelLength(BlurLevel level) {
  const double rounded = std::round(level.pixels);
  return rounded < 1.0 ? 1 : static_cast<std::size_t>(rounded);
}

Image ApplyMotionBlur(const Image& image, BlurLevel level) {
  const std::size_t n = BlurKernelLength(level);
  if (n == 1) return image;
  const auto w = static_cast<std::ptrdiff_t>(image.width());
  const std::ptrdiff_t first = -static_cast<std::ptrdiff_t>(n / 2);
  const std::ptrdiff_t last = first + static_cast<std::ptrdiff_t>(n) - 1;
  const double inv = 1.0 / static_cast<double>(n);

  Image out(image.width(), image.height(), image.channels());
  for (std::size_t y = 0; y < image.height(); ++y) {
    for (std::ptrdiff_t x = 0; x < w; ++x) {
      for (std::size_t c = 0; c < image.channels(); ++c) {
        double sum = 0.0;
        for (std::ptrdiff_t o = first; o <= last; ++o) {
          const auto sx = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(x + o, 0, w - 1));
          sum += image.at(sx, y, c);
        }
        out.at(static_cast<std::size_t>(x), y, c) = sum * inv;
      }
    }
  }
  out.Clamp();
  return out;
}

}  // namespace flsimco::imaging
