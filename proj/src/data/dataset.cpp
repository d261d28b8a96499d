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

#include "flsimco/data/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include "flsimco/common/errors.hpp"
#include "flsimco/common/random.hpp"

namespace flsimco::data {

void Dataset::Validate() const {
  if (images.size() != labels.size()) throw DataError("dataset: images and labels differ in length");
  if (class_count <= 0) throw DataError("dataset: class count must be positive");
  for (int label : labels) {
    if (label < 0 || label >= class_count) throw DataError("dataset: label " + std::to_string(label) + " out of range");
  }
}

std::vector<Image> ShardImages(const Dataset& dataset, const Shard& shard) {
  std::vector<Image> out;
  out.reserve(shard.indices.size());
  for (auto i : shard.indices) out.push_back(dataset.images.at(i));
  return out;
}

namespace {

void HsvColor(double h, double s, double v, double rgb[3]) {
  const double h6 = h * 6.0;
  const int sector = static_cast<int>(std::floor(h6)) % 6;
  const double f = h6 - std::floor(h6);
  const double p = v * (1 - s), q = v * (1 - s * f), t = v * (1 - s * (1 - f));
  const double table[6][3] = {{v, t, p}, {q, v, p}, {p, v, t}, {p, q, v}, {t, p, v}, {v, p, q}};
  std::copy(table[sector], table[sector] + 3, rgb);
}

}  // namespace

Dataset GenerateSynthetic(const SyntheticSpec& spec) {
  if (spec.classes < 2 || spec.per_class < 1 || spec.side < 4) {
    throw ContractError("gen_synthetic: need classes >= 2, per_class >= 1, side >= 4");
  }
  if (!(spec.noise >= 0.0)) throw ContractError("gen_synthetic: noise must be nonnegative");
  Rng rng(DeriveSeed(spec.seed, 0, 0, "synthetic"));
  Dataset out;
  out.class_count = spec.classes;
  const auto side = static_cast<std::size_t>(spec.side);
  for (int c = 0; c < spec.classes; ++c) {
    double base[3];
    HsvColor(static_cast<double>(c) / spec.classes, 0.7, 0.8, base);
    const double angle = std::numbers::pi * c / spec.classes;
    const double frequency = 1.0 + (c % 3);
    const double dx = std::cos(angle), dy = std::sin(angle);
    for (int n = 0; n < spec.per_class; ++n) {
      const double phase = UniformIn(rng, 0.0, 2.0 * std::numbers::pi);
      Image img(side, side, 3);
      for (std::size_t y = 0; y < side; ++y)
        for (std::size_t x = 0; x < side; ++x) {
          const double u = (dx * x + dy * y) / spec.side;
          const double stripe = std::sin(2.0 * std::numbers::pi * frequency * u + phase);
          for (std::size_t ch = 0; ch < 3; ++ch) {
            double v = 0.15 + 0.6 * base[ch] + 0.2 * stripe;
            if (spec.noise > 0.0) v += UniformIn(rng, -spec.noise, spec.noise);
            img.at(x, y, ch) = std::clamp(v, 0.0, 1.0);
          }
        }
      out.images.push_back(std::move(img));
      out.labels.push_back(c);
    }
  }
  return out;
}

Dataset LoadCifarBatch(const std::filesystem::path& file, int side, int class_count) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw DataError("cifar: cannot open " + file.string());
  const std::size_t plane = static_cast<std::size_t>(side) * side;
  const std::size_t record = 1 + 3 * plane;
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() % record != 0) {
    throw DataError("cifar: " + file.string() + " is truncated (" + std::to_string(bytes.size()) +
                    " bytes is not a multiple of the " + std::to_string(record) + "-byte record)");
  }
  Dataset out;
  out.class_count = class_count;
  const std::size_t count = bytes.size() / record;
  out.images.reserve(count);
  out.labels.reserve(count);
  for (std::size_t r = 0; r < count; ++r) {
    const unsigned char* rec = bytes.data() + r * record;
    if (rec[0] >= class_count) {
      throw DataError("cifar: record " + std::to_string(r) + " of " + file.string() + " has label byte " +
                      std::to_string(rec[0]) + " > " + std::to_string(class_count - 1));
    }
    std::vector<double> pixels(3 * plane);
    for (std::size_t i = 0; i < plane; ++i)
      for (std::size_t c = 0; c < 3; ++c) pixels[i * 3 + c] = rec[1 + c * plane + i] / 255.0;
    out.images.emplace_back(side, side, 3, std::move(pixels));
    out.labels.push_back(rec[0]);
  }
  return out;
}

Dataset LoadCifar10(const std::filesystem::path& directory) {
  Dataset out;
  out.class_count = 10;
  for (int b = 1; b <= 5; ++b) {
    auto part = LoadCifarBatch(directory / ("data_batch_" + std::to_string(b) + ".bin"));
    std::move(part.images.begin(), part.images.end(), std::back_inserter(out.images));
    out.labels.insert(out.labels.end(), part.labels.begin(), part.labels.end());
  }
  return out;
}

Dataset LoadCifar10Test(const std::filesystem::path& directory) {
  return LoadCifarBatch(directory / "test_batch.bin");
}

void WriteCifarBatch(const Dataset& dataset, const std::filesystem::path& file) {
  dataset.Validate();
  if (dataset.class_count > 256) throw DataError("cifar: labels must fit in one byte");
  std::ofstream out(file, std::ios::binary);
  if (!out) throw DataError("cifar: cannot write " + file.string());
  for (std::size_t r = 0; r < dataset.size(); ++r) {
    const Image& img = dataset.images[r];
    if (img.channels() != 3 || img.width() != img.height()) throw DataError("cifar: images must be square RGB");
    out.put(static_cast<char>(dataset.labels[r]));
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t y = 0; y < img.height(); ++y)
        for (std::size_t x = 0; x < img.width(); ++x)
          out.put(static_cast<char>(static_cast<unsigned char>(std::lround(img.at(x, y, c) * 255.0))));
  }
  if (!out) throw DataError("cifar: write failed for " + file.string());
}

}  // namespace flsimco::data
