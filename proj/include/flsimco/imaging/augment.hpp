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

#include "flsimco/common/random.hpp"
#include "flsimco/imaging/image.hpp"

namespace flsimco::imaging {

enum class Pipeline { kPi1, kPi2 };

struct AugmentationPolicy {
  Pipeline pipeline = Pipeline::kPi1;
  double flip_prob = 0.0;
  double grayscale_prob = 0.0;
  double jitter_prob = 0.0;
  // Brightness/contrast/saturation factors are drawn from [1 - r, 1 + r];
  // the hue shift from [-r, r] turns of the hue circle.
  double brightness_range = 0.0;
  double contrast_range = 0.0;
  double saturation_range = 0.0;
  double hue_range = 0.0;

  // Flip with p = 0.5, then grayscale with p = 0.2.
  static AugmentationPolicy Pi1();
  // Colour jitter (0.4 each) with p = 0.8, then grayscale with p = 0.4.
  static AugmentationPolicy Pi2();

  void Validate() const;
};

// Random decisions of one augmentation call. Drawing and applying are
// separate so a draw can be inspected or forced.
struct AugmentationDraw {
  bool flip = false;
  bool jitter = false;
  double brightness = 1.0;
  double contrast = 1.0;
  double saturation = 1.0;
  double hue_shift = 0.0;
  bool grayscale = false;
};

AugmentationDraw DrawAugmentation(const AugmentationPolicy& policy, Rng& rng);
Image ApplyAugmentation(const Image& image, const AugmentationDraw& draw);

// Draw + apply with the default pi1 / pi2 policies.
Image AugmentPi1(const Image& image, Rng& rng);
Image AugmentPi2(const Image& image, Rng& rng);
Image Augment(const Image& image, const AugmentationPolicy& policy, Rng& rng);

Image FlipHorizontal(const Image& image);
// Every channel set to 0.299 R + 0.587 G + 0.114 B. No-op for one channel.
Image ToGrayscale(const Image& image);
Image AdjustBrightness(const Image& image, double factor);
// Blend towards the mean luminance of the whole image.
Image AdjustContrast(const Image& image, double factor);
// Blend towards each pixel's luminance. No-op for one channel.
Image AdjustSaturation(const Image& image, double factor);
// Rotate hue by `shift` turns in HSV space. No-op for one channel.
Image AdjustHue(const Image& image, double shift);

}  // namespace flsimco::imaging
