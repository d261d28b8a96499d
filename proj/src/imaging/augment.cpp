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

#include "flsimco/imaging/augment.hpp"

#include <algorithm>
#include <cmath>

#include "flsimco/common/errors.hpp"

namespace flsimco::imaging {

namespace {

double Luminance(double r, double g, double b) { return 0.299 * r + 0.587 * g + 0.114 * b; }

double PixelLuminance(const Image& image, std::size_t x, std::size_t y) {
  if (image.channels() == 1) return image.at(x, y, 0);
  return Luminance(image.at(x, y, 0), image.at(x, y, 1), image.at(x, y, 2));
}

void RgbToHsv(double r, double g, double b, double& h, double& s, double& v) {
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double delta = mx - mn;
  v = mx;
  s = mx > 0.0 ? delta / mx : 0.0;
  if (delta <= 0.0) {
    h = 0.0;
    return;
  }
  if (mx == r) {
    h = (g - b) / delta;
  } else if (mx == g) {
    h = 2.0 + (b - r) / delta;
  } else {
    h = 4.0 + (r - g) / delta;
  }
  h /= 6.0;
  if (h < 0.0) h += 1.0;
}

void HsvToRgb(double h, double s, double v, double& r, double& g, double& b) {
  const double h6 = h * 6.0;
  const int sector = static_cast<int>(std::floor(h6)) % 6;
  const double f = h6 - std::floor(h6);
  const double p = v * (1.0 - s);
  const double q = v * (1.0 - s * f);
  const double t = v * (1.0 - s * (1.0 - f));
  switch (sector) {
    case 0: r = v, g = t, b = p; break;
    case 1: r = q, g = v, b = p; break;
    case 2: r = p, g = v, b = t; break;
    case 3: r = p, g = q, b = v; break;
    case 4: r = t, g = p, b = v; break;
    default: r = v, g = p, b = q; break;
  }
}

}  // namespace

AugmentationPolicy AugmentationPolicy::Pi1() {
  AugmentationPolicy p;
  p.pipeline = Pipeline::kPi1;
  p.flip_prob = 0.5;
  p.grayscale_prob = 0.2;
  return p;
}

AugmentationPolicy AugmentationPolicy::Pi2() {
  AugmentationPolicy p;
  p.pipeline = Pipeline::kPi2;
  p.jitter_prob = 0.8;
  p.brightness_range = 0.4;
  p.contrast_range = 0.4;
  p.saturation_range = 0.4;
  p.hue_range = 0.4;
  p.grayscale_prob = 0.4;
  return p;
}

void AugmentationPolicy::Validate() const {
  for (double prob : {flip_prob, grayscale_prob, jitter_prob}) {
    if (!(prob >= 0.0 && prob <= 1.0)) throw ContractError("augmentation: probabilities must lie in [0, 1]");
  }
  for (double r : {brightness_range, contrast_range, saturation_range, hue_range}) {
    if (!(r >= 0.0)) throw ContractError("augmentation: jitter ranges must be nonnegative");
  }
}

AugmentationDraw DrawAugmentation(const AugmentationPolicy& policy, Rng& rng) {
  AugmentationDraw draw;
  if (policy.flip_prob > 0.0) draw.flip = Bernoulli(rng, policy.flip_prob);
  if (policy.jitter_prob > 0.0) {
    draw.jitter = Bernoulli(rng, policy.jitter_prob);
    if (draw.jitter) {
      draw.brightness = UniformIn(rng, 1.0 - policy.brightness_range, 1.0 + policy.brightness_range);
      draw.contrast = UniformIn(rng, 1.0 - policy.contrast_range, 1.0 + policy.contrast_range);
      draw.saturation = UniformIn(rng, 1.0 - policy.saturation_range, 1.0 + policy.saturation_range);
      draw.hue_shift = UniformIn(rng, -policy.hue_range, policy.hue_range);
    }
  }
  if (policy.grayscale_prob > 0.0) draw.grayscale = Bernoulli(rng, policy.grayscale_prob);
  return draw;
}

Image ApplyAugmentation(const Image& image, const AugmentationDraw& draw) {
  Image out = draw.flip ? FlipHorizontal(image) : image;
  if (draw.jitter) {
    // Fixed order: these operations do not commute.
    out = AdjustBrightness(out, draw.brightness);
    out = AdjustContrast(out, draw.contrast);
    out = AdjustSaturation(out, draw.saturation);
    out = AdjustHue(out, draw.hue_shift);
  }
  if (draw.grayscale) out = ToGrayscale(out);
  out.Clamp();
  return out;
}

Image Augment(const Image& image, const AugmentationPolicy& policy, Rng& rng) {
  return ApplyAugmentation(image, DrawAugmentation(policy, rng));
}

Image AugmentPi1(const Image& image, Rng& rng) { return Augment(image, AugmentationPolicy::Pi1(), rng); }

Image AugmentPi2(const Image& image, Rng& rng) { return Augment(image, AugmentationPolicy::Pi2(), rng); }

Image FlipHorizontal(const Image& image) {
  Image out(image.width(), image.height(), image.channels());
  const std::size_t w = image.width();
  for (std::size_t y = 0; y < image.height(); ++y)
    for (std::size_t x = 0; x < w; ++x)
      for (std::size_t c = 0; c < image.channels(); ++c) out.at(w - 1 - x, y, c) = image.at(x, y, c);
  return out;
}

Image ToGrayscale(const Image& image) {
  if (image.channels() == 1) return image;
  Image out(image.width(), image.height(), image.channels());
  for (std::size_t y = 0; y < image.height(); ++y)
    for (std::size_t x = 0; x < image.width(); ++x) {
      const double l = std::clamp(PixelLuminance(image, x, y), 0.0, 1.0);
      for (std::size_t c = 0; c < image.channels(); ++c) out.at(x, y, c) = l;
    }
  return out;
}

Image AdjustBrightness(const Image& image, double factor) {
  Image out = image;
  for (double& v : out.pixels()) v = std::clamp(v * factor, 0.0, 1.0);
  return out;
}

Image AdjustContrast(const Image& image, double factor) {
  double mean = 0.0;
  for (std::size_t y = 0; y < image.height(); ++y)
    for (std::size_t x = 0; x < image.width(); ++x) mean += PixelLuminance(image, x, y);
  mean /= static_cast<double>(image.width() * image.height());
  Image out = image;
  for (double& v : out.pixels()) v = std::clamp(factor * v + (1.0 - factor) * mean, 0.0, 1.0);
  return out;
}

Image AdjustSaturation(const Image& image, double factor) {
  if (image.channels() == 1) return image;
  Image out = image;
  for (std::size_t y = 0; y < image.height(); ++y)
    for (std::size_t x = 0; x < image.width(); ++x) {
      const double l = PixelLuminance(image, x, y);
      for (std::size_t c = 0; c < 3; ++c)
        out.at(x, y, c) = std::clamp(factor * image.at(x, y, c) + (1.0 - factor) * l, 0.0, 1.0);
    }
  return out;
}

Image AdjustHue(const Image& image, double shift) {
  if (image.channels() == 1 || shift == 0.0) return image;
  Image out = image;
  for (std::size_t y = 0; y < image.height(); ++y)
    for (std::size_t x = 0; x < image.width(); ++x) {
      double h, s, v;
      RgbToHsv(image.at(x, y, 0), image.at(x, y, 1), image.at(x, y, 2), h, s, v);
      h = std::fmod(h + shift, 1.0);
      if (h < 0.0) h += 1.0;
      double r, g, b;
      HsvToRgb(h, s, v, r, g, b);
      out.at(x, y, 0) = std::clamp(r, 0.0, 1.0);
      out.at(x, y, 1) = std::clamp(g, 0.0, 1.0);
      out.at(x, y, 2) = std::clamp(b, 0.0, 1.0);
    }
  return out;
}

}  // namespace flsimco::imaging
