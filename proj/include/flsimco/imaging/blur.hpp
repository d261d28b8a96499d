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

#pragma once

#include <cstddef>

#include "flsimco/imaging/image.hpp"
#include "flsimco/mobility/mobility.hpp"

namespace flsimco::imaging {

// Exposure time H (s), focal length s (m) and pixel unit Q. The product
// H*s/Q converts velocity in m/s to horizontal smear in pixels.
struct CameraParams {
  double exposure_time = 0.01;
  double focal_length = 0.036;
  double pixel_unit = 0.001;

  double constant() const { return exposure_time * focal_length / pixel_unit; }
  void Validate() const;
  bool operator==(const CameraParams&) const = default;
};

struct BlurLevel {
  double pixels = 0.0;
  bool operator==(const BlurLevel&) const = default;
};

// L = (H s / Q) v. Negative velocity is a ContractError.
BlurLevel ComputeBlurLevel(mobility::Velocity v, const CameraParams& camera);

// max(1, round(L)).
std::size_t BlurKernelLength(BlurLevel level);

// Horizontal box filter of BlurKernelLength taps, centred on the output
// pixel (for even lengths the extra tap falls on the left), with clamped
// borders.
Image ApplyMotionBlur(const Image& image, BlurLevel level);

}  // namespace flsimco::imaging
