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

#include "flsimco/common/errors.hpp"
#include "flsimco/common/random.hpp"
#include "flsimco/eval/curves.hpp"
#include "flsimco/eval/probe.hpp"

namespace flsimco::eval {
namespace {

using numerics::Tensor;

Tensor RandomUnitRows(std::size_t n, std::size_t d, Rng& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> v(n * d);
  for (std::size_t r = 0; r < n; ++r) {
    double norm = 0;
    for (std::size_t c = 0; c < d; ++c) norm += std::pow(v[r * d + c] = normal(rng), 2);
    for (std::size_t c = 0; c < d; ++c) v[r * d + c] /= std::sqrt(norm);
  }
  return Tensor::Matrix(n, d, v);
}

TEST(KnnTest, SelfNeighbourWithKOne) {
  Rng rng(1);
  const auto train = RandomUnitRows(30, 6, rng);
  std::vector<int> labels(30);
  for (int i = 0; i < 30; ++i) labels[i] = i % 4;
  const auto pred = KnnPredict(train, labels, train, 1, 4);
  EXPECT_EQ(Top1Accuracy(pred, labels), 1.0);
}

TEST(KnnTest, OrthogonalClustersAreSeparated) {
  Rng rng(2);
  std::vector<double> train, test;
  std::vector<int> train_labels, test_labels;
  for (int c = 0; c < 4; ++c)
    for (int i = 0; i < 10; ++i) {
      for (auto* target : {&train, &test}) {
        std::vector<double> row(4, 0.0);
        row[c] = 1.0;
        row[(c + 1) % 4] = UniformIn(rng, 0.0, 0.2);
        const double n = std::sqrt(row[c] * row[c] + row[(c + 1) % 4] * row[(c + 1) % 4]);
        for (double x : row) target->push_back(x / n);
      }
      train_labels.push_back(c);
      test_labels.push_back(c);
    }
  const auto pred = KnnPredict(Tensor::Matrix(40, 4, train), train_labels, Tensor::Matrix(40, 4, test), 3, 4);
  EXPECT_EQ(Top1Accuracy(pred, test_labels), 1.0);
}

TEST(KnnTest, RandomEmbeddingsScoreChance) {
  Rng rng(3);
  const auto train = RandomUnitRows(1000, 16, rng);
  const auto test = RandomUnitRows(1000, 16, rng);
  std::vector<int> train_labels(1000), test_labels(1000);
  for (auto& l : train_labels) l = std::uniform_int_distribution<int>(0, 9)(rng);
  for (auto& l : test_labels) l = std::uniform_int_distribution<int>(0, 9)(rng);
  EXPECT_NEAR(Top1Accuracy(KnnPredict(train, train_labels, test, 20, 10), test_labels), 0.1, 0.03);
}

TEST(KnnTest, InvariantToCommonRotation) {
  Rng rng(4);
  const auto train = RandomUnitRows(50, 2, rng);
  const auto test = RandomUnitRows(20, 2, rng);
  std::vector<int> labels(50);
  for (int i = 0; i < 50; ++i) labels[i] = i % 3;
  auto rotate = [](const Tensor& t, double a) {
    std::vector<double> v(t.size());
    for (std::size_t r = 0; r < t.rows(); ++r) {
      v[2 * r] = std::cos(a) * t.at(r, 0) - std::sin(a) * t.at(r, 1);
      v[2 * r + 1] = std::sin(a) * t.at(r, 0) + std::cos(a) * t.at(r, 1);
    }
    return Tensor::Matrix(t.rows(), 2, v);
  };
  EXPECT_EQ(KnnPredict(train, labels, test, 5, 3), KnnPredict(rotate(train, 1.1), labels, rotate(test, 1.1), 5, 3));
}

TEST(KnnTest, VoteTieGoesToCloserClassThenLowerId) {
  // Two training points per class; the test point is nearer class 2's pair.
  const Tensor train = Tensor::Matrix(4, 2, {1, 0, 0.8, 0.6, 0, 1, 0.6, 0.8});
  const std::vector<int> labels{2, 2, 1, 1};
  const Tensor test = Tensor::Matrix(1, 2, {0.96, 0.28});
  EXPECT_EQ(KnnPredict(train, labels, test, 4, 3), (std::vector<int>{2}));
  const Tensor middle = Tensor::Matrix(2, 2, {1, 0, 1, 0});
  EXPECT_EQ(KnnPredict(middle, std::vector<int>{1, 0}, Tensor::Matrix(1, 2, {1, 0}), 2, 2), (std::vector<int>{0}));
}

TEST(ProbeConfigTest, Validation) {
  EXPECT_THROW((ProbeConfig{1, {}, {0}}.Validate(5)), ContractError);
  EXPECT_THROW((ProbeConfig{1, {0, 1}, {1}}.Validate(5)), ContractError);
  EXPECT_THROW((ProbeConfig{3, {0, 1}, {2}}.Validate(5)), ContractError);
  EXPECT_THROW((ProbeConfig{1, {0, 9}, {2}}.Validate(5)), ContractError);
  EXPECT_NO_THROW((ProbeConfig{2, {0, 1}, {2}}.Validate(5)));
}

TEST(CurveStatsTest, Examples) {
  EXPECT_EQ(ComputeCurveStats(std::vector<double>{2, 2, 2, 2}).difference_std, 0.0);
  EXPECT_NEAR(ComputeCurveStats(std::vector<double>{1, 0.8, 0.6, 0.4}).difference_std, 0.0, 1e-15);
  const auto s = ComputeCurveStats(std::vector<double>{1.0, 0.5, 0.75});
  EXPECT_EQ(s.differences, (std::vector<double>{-0.5, 0.25}));
  EXPECT_NEAR(s.difference_std, 0.75 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(s.final_value, 0.75);
  EXPECT_EQ(s.min_value, 0.5);
  EXPECT_THROW(ComputeCurveStats(std::vector<double>{1.0}), ContractError);
}

TEST(CurveStatsTest, ShiftInvariant) {
  Rng rng(5);
  std::vector<double> losses(20), shifted(20);
  for (std::size_t i = 0; i < 20; ++i) {
    losses[i] = UniformIn(rng, 0, 3);
    shifted[i] = losses[i] + 7.5;
  }
  EXPECT_NEAR(ComputeCurveStats(losses).difference_std, ComputeCurveStats(shifted).difference_std, 1e-12);
}

TEST(CompareRunsTest, SingleRunMatchesItsStats) {
  const std::vector<RunSeries> runs{{"flsimco", "0", {3, 2, 2.5}, {0.2, 0.5, 0.4}}};
  const auto table = CompareRuns(runs);
  ASSERT_EQ(table.rows.size(), 2u);
  EXPECT_EQ(table.rows[0].final_loss, 2.5);
  EXPECT_EQ(table.rows[0].final_top1, 0.4);
  EXPECT_EQ(table.rows[0].best_top1, 0.5);
  EXPECT_EQ(table.rows[0].curve_std, ComputeCurveStats(runs[0].losses).difference_std);
  EXPECT_EQ(table.rows[1].seed, "mean");
  EXPECT_EQ(table.rows[1].final_loss, 2.5);
  EXPECT_TRUE(table.deltas.empty());
}

TEST(CompareRunsTest, MeanRowsAndDeltas) {
  const std::vector<RunSeries> runs{{"a", "0", {1, 2}, {0.1, 0.2}},
                                    {"a", "1", {1, 4}, {0.3, 0.4}},
                                    {"a", "2", {1, 6}, {0.5, 0.6}},
                                    {"b", "0", {1, 1}, {0.1, 0.1}}};
  const auto table = CompareRuns(runs);
  ASSERT_EQ(table.rows.size(), 6u);
  EXPECT_EQ(table.rows[3].seed, "mean");
  EXPECT_DOUBLE_EQ(table.rows[3].final_loss, 4.0);
  EXPECT_DOUBLE_EQ(table.rows[3].final_top1, 0.4);
  ASSERT_EQ(table.deltas.size(), 1u);
  EXPECT_DOUBLE_EQ(table.deltas[0].final_loss, 3.0);
  EXPECT_DOUBLE_EQ(table.deltas[0].final_top1, 0.4 - 0.1);
}

TEST(CompareRunsTest, MismatchedRoundsRejected) {
  const std::vector<RunSeries> runs{{"a", "0", {1, 2}, {0, 0}}, {"b", "0", {1, 2, 3}, {0, 0, 0}}};
  EXPECT_THROW(CompareRuns(runs), ContractError);
}

TEST(CompareRunsTest, CsvColumns) {
  const std::vector<RunSeries> runs{{"a", "0", {1, 0.5}, {0.25, std::nan("")}}};
  const auto csv = SummaryCsv(CompareRuns(runs));
  EXPECT_EQ(csv,
            "strategy,seed,round,loss,top1,curve_std,best_top1\n"
            "a,0,2,0.5,nan,0,0.25\n"
            "a,mean,2,0.5,nan,0,0.25\n");
}

}  // namespace
}  // namespace flsimco::eval
