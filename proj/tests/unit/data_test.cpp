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

#include <gtest/gtest.h>

#include <cmath>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "flsimco/common/errors.hpp"
#include "flsimco/data/dataset.hpp"
#include "flsimco/data/partition.hpp"

namespace flsimco::data {
namespace {

std::filesystem::path TempFile(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("flsimco_data_test_" + name);
}

void ExpectDisjointAndValid(const Dataset& d, const std::vector<Shard>& shards) {
  std::set<std::size_t> seen;
  for (const auto& s : shards)
    for (auto i : s.indices) {
      EXPECT_LT(i, d.size());
      EXPECT_TRUE(seen.insert(i).second) << "index " << i << " in two shards";
    }
}

TEST(SyntheticTest, CountsPerClass) {
  const auto d = GenerateSynthetic({4, 50, 8, 1, 0.1});
  EXPECT_EQ(d.size(), 200u);
  for (int c = 0; c < 4; ++c) EXPECT_EQ(std::count(d.labels.begin(), d.labels.end(), c), 50);
  EXPECT_NO_THROW(d.Validate());
}

TEST(SyntheticTest, SameSeedSameBits) {
  const auto a = GenerateSynthetic({3, 10, 8, 5, 0.1});
  const auto b = GenerateSynthetic({3, 10, 8, 5, 0.1});
  const auto c = GenerateSynthetic({3, 10, 8, 6, 0.1});
  EXPECT_EQ(a.images, b.images);
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_NE(a.images, c.images);
}

// Noise-free corpus: assigning each image to the nearest class centroid in
// pixel space recovers every label.
TEST(SyntheticTest, NoiseFreeMeanColourIdentifiesClass) {
  // Stripe phases vary per image, so classify by the mean colour alone.
  const auto d = GenerateSynthetic({10, 30, 8, 2, 0.0});
  auto mean_colour = [](const Image& img) {
    std::vector<double> m(3, 0.0);
    for (std::size_t y = 0; y < img.height(); ++y)
      for (std::size_t x = 0; x < img.width(); ++x)
        for (std::size_t ch = 0; ch < 3; ++ch) m[ch] += img.at(x, y, ch) / (img.width() * img.height());
    return m;
  };
  std::vector<std::vector<double>> centroid(10, std::vector<double>(3, 0.0));
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto m = mean_colour(d.images[i]);
    for (std::size_t ch = 0; ch < 3; ++ch) centroid[d.labels[i]][ch] += m[ch] / 30.0;
  }
  int correct = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto m = mean_colour(d.images[i]);
    int best = -1;
    double best_dist = 1e300;
    for (int c = 0; c < 10; ++c) {
      double dist = 0.0;
      for (std::size_t ch = 0; ch < 3; ++ch) dist += std::pow(m[ch] - centroid[c][ch], 2);
      if (dist < best_dist) {
        best_dist = dist;
        best = c;
      }
    }
    correct += best == d.labels[i];
  }
  EXPECT_EQ(correct, static_cast<int>(d.size()));
}

TEST(CifarTest, RoundTripAndDecoding) {
  Dataset d;
  d.class_count = 10;
  std::vector<double> pixels(3 * 2 * 2, 0.0);
  pixels[0] = 1.0;  // first byte of the red plane
  d.images.emplace_back(2, 2, 3, pixels);
  d.labels.push_back(7);
  d.images.emplace_back(2, 2, 3, std::vector<double>(12, 128.0 / 255.0));
  d.labels.push_back(2);
  const auto path = TempFile("roundtrip.bin");
  WriteCifarBatch(d, path);
  EXPECT_EQ(std::filesystem::file_size(path), 2u * (1 + 12));
  const auto loaded = LoadCifarBatch(path, 2);
  ASSERT_EQ(loaded.size(), 2u);
  EXPECT_EQ(loaded.labels[0], 7);
  EXPECT_EQ(loaded.images[0].at(0, 0, 0), 1.0);
  EXPECT_EQ(loaded.images[0].at(0, 0, 1), 0.0);
  EXPECT_NEAR(loaded.images[1].at(1, 1, 2), 128.0 / 255.0, 1e-15);
  std::filesystem::remove(path);
}

TEST(CifarTest, FullSizeBatchRecordCount) {
  const auto d = GenerateSynthetic({10, 1000, 32, 3, 0.1});
  const auto path = TempFile("full.bin");
  WriteCifarBatch(d, path);
  EXPECT_EQ(std::filesystem::file_size(path), 10000u * 3073u);
  EXPECT_EQ(LoadCifarBatch(path).size(), 10000u);
  std::filesystem::remove(path);
}

TEST(CifarTest, ErrorsNameTheProblem) {
  EXPECT_THROW(LoadCifarBatch(TempFile("missing.bin")), DataError);
  const auto path = TempFile("bad.bin");
  {
    std::ofstream out(path, std::ios::binary);
    std::string record(1 + 12, '\0');
    record[0] = 12;  // label out of range
    out << record;
  }
  try {
    LoadCifarBatch(path, 2);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("label"), std::string::npos);
  }
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << std::string(20, '\1');
  }
  try {
    LoadCifarBatch(path, 2);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("truncated"), std::string::npos);
  }
  std::filesystem::remove(path);
}

TEST(PartitionIidTest, EvenDivision) {
  const auto d = GenerateSynthetic({4, 50, 4, 1, 0.1});
  const auto shards = PartitionIid(d, {PartitionPolicy::kIid, 0.1, 4, 10}, 3);
  ASSERT_EQ(shards.size(), 4u);
  ExpectDisjointAndValid(d, shards);
  for (const auto& s : shards) {
    EXPECT_EQ(s.indices.size(), 50u);
    std::vector<int> counts(4, 0);
    for (auto i : s.indices) ++counts[d.labels[i]];
    for (int c : counts) {
      EXPECT_GE(c, 12);
      EXPECT_LE(c, 13);
    }
  }
}

TEST(PartitionIidTest, CifarScaleMeetsMinimum) {
  const auto d = GenerateSynthetic({10, 5000, 4, 1, 0.1});
  const PartitionSpec spec;  // 95 vehicles, 520 minimum
  const auto shards = PartitionIid(d, spec, 0);
  ASSERT_EQ(shards.size(), 95u);
  ExpectDisjointAndValid(d, shards);
  for (const auto& s : shards) EXPECT_GE(s.indices.size(), 520u);
}

TEST(PartitionDirichletTest, DeterministicAndDisjoint) {
  const auto d = GenerateSynthetic({10, 100, 4, 1, 0.1});
  const PartitionSpec spec{PartitionPolicy::kDirichlet, 0.3, 8, 60};
  const auto a = PartitionDirichlet(d, spec, 17);
  const auto b = PartitionDirichlet(d, spec, 17);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t v = 0; v < a.size(); ++v) EXPECT_EQ(a[v].indices, b[v].indices);
  ExpectDisjointAndValid(d, a);
  for (const auto& s : a) EXPECT_GE(s.indices.size(), 60u);
}

double MeanMaxFraction(const Dataset& d, double alpha) {
  const PartitionSpec spec{PartitionPolicy::kDirichlet, alpha, 10, 100};
  double total = 0.0;
  int n = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed)
    for (const auto& s : PartitionDirichlet(d, spec, seed)) {
      total += MaxClassFraction(d, s);
      ++n;
    }
  return total / n;
}

TEST(PartitionDirichletTest, SkewTracksAlpha) {
  const auto d = GenerateSynthetic({10, 200, 4, 1, 0.1});
  const double skewed = MeanMaxFraction(d, 0.1);
  const double mid = MeanMaxFraction(d, 1.0);
  const double flat = MeanMaxFraction(d, 10.0);
  const double uniform = MeanMaxFraction(d, 1e6);
  EXPECT_GT(skewed, 0.5);
  EXPECT_GT(skewed, mid);
  EXPECT_GT(mid, flat);
  EXPECT_NEAR(uniform, 0.1, 0.05);
}

TEST(PartitionTest, InfeasibleMinimumNamesShortfall) {
  const auto d = GenerateSynthetic({4, 10, 4, 1, 0.1});
  try {
    Partition(d, {PartitionPolicy::kDirichlet, 1.0, 5, 20}, 0);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("100"), std::string::npos) << e.what();
  }
}

TEST(PartitionTest, PolicyNames) {
  EXPECT_EQ(ParsePartitionPolicy("iid"), PartitionPolicy::kIid);
  EXPECT_EQ(ParsePartitionPolicy("dirichlet"), PartitionPolicy::kDirichlet);
  EXPECT_EQ(PartitionPolicyName(PartitionPolicy::kDirichlet), "dirichlet");
  EXPECT_THROW(ParsePartitionPolicy("zipf"), ContractError);
}

TEST(ShardTest, ImagesOnly) {
  const auto d = GenerateSynthetic({2, 3, 4, 1, 0.1});
  const Shard s{0, {4, 1}};
  const auto images = ShardImages(d, s);
  ASSERT_EQ(images.size(), 2u);
  EXPECT_EQ(images[0], d.images[4]);
  EXPECT_EQ(images[1], d.images[1]);
}

}  // namespace
}  // namespace flsimco::data
