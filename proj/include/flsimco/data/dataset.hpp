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
#include <cstdint>
#include <filesystem>
#include <vector>

#include "flsimco/imaging/image.hpp"

namespace flsimco::data {

using imaging::Image;

// Labelled images. Training code only ever sees images through
// ShardImages; labels are read by the evaluation probe.
struct Dataset {
  std::vector<Image> images;
  std::vector<int> labels;
  int class_count = 0;

  std::size_t size() const { return images.size(); }
  // Throws DataError on length mismatch or out-of-range labels.
  void Validate() const;
};

struct Shard {
  int owner = 0;
  std::vector<std::size_t> indices;
};

// Images of a shard, without labels.
std::vector<Image> ShardImages(const Dataset& dataset, const Shard& shard);

// Distinct class textures: a class-specific base colour with oriented
// sinusoidal stripes (random phase per image) plus uniform pixel noise.
struct SyntheticSpec {
  int classes = 10;
  int per_class = 100;
  int side = 32;
  std::uint64_t seed = 0;
  double noise = 0.1;
};

Dataset GenerateSynthetic(const SyntheticSpec& spec);

// CIFAR-10 binary record layout: one label byte followed by the R, G and B
// planes of a side x side image (3073 bytes for side 32).
Dataset LoadCifarBatch(const std::filesystem::path& file, int side = 32, int class_count = 10);
// data_batch_1.bin .. data_batch_5.bin.
Dataset LoadCifar10(const std::filesystem::path& directory);
// test_batch.bin.
Dataset LoadCifar10Test(const std::filesystem::path& directory);
// Writes `dataset` in the record layout above (3-channel, square images).
void WriteCifarBatch(const Dataset& dataset, const std::filesystem::path& file);

}  // namespace flsimco::data
