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
#include <span>
#include <vector>

namespace flsimco::imaging {

// Row-major, channel-interleaved image with values in [0, 1].
class Image {
 public:
  Image() = default;
  Image(std::size_t width, std::size_t height, std::size_t channels);
  Image(std::size_t width, std::size_t height, std::size_t channels, std::vector<double> pixels);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t channels() const { return channels_; }
  std::size_t size() const { return pixels_.size(); }

  double at(std::size_t x, std::size_t y, std::size_t c) const { return pixels_[Index(x, y, c)]; }
  double& at(std::size_t x, std::size_t y, std::size_t c) { return pixels_[Index(x, y, c)]; }

  std::span<const double> pixels() const { return pixels_; }
  std::span<double> pixels() { return pixels_; }

  bool SameDimensions(const Image& other) const {
    return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
  }
  void Clamp();

  bool operator==(const Image&) const = default;

 private:
  std::size_t Index(std::size_t x, std::size_t y, std::size_t c) const { return (y * width_ + x) * channels_ + c; }

  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::size_t channels_ = 0;
  std::vector<double> pixels_;
};

}  // namespace flsimco::imaging
