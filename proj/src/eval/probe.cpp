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

#include "flsimco/eval/probe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "flsimco/common/errors.hpp"

namespace flsimco::eval {

void ProbeConfig::Validate(std::size_t dataset_size) const {
  if (train_indices.empty() || test_indices.empty()) throw ContractError("probe: train and test sets must be non-empty");
  if (k == 0 || k > train_indices.size()) throw ContractError("probe: k must lie in [1, |probe_train|]");
  std::unordered_set<std::size_t> train(train_indices.begin(), train_indices.end());
  for (auto i : train_indices)
    if (i >= dataset_size) throw ContractError("probe: train index out of range");
  for (auto i : test_indices) {
    if (i >= dataset_size) throw ContractError("probe: test index out of range");
    if (train.count(i) != 0) throw ContractError("probe: train and test sets overlap");
  }
}

namespace {

std::vector<double> RowNorms(const numerics::Tensor& t) {
  std::vector<double> norms(t.rows());
  for (std::size_t r = 0; r < t.rows(); ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < t.cols(); ++c) s += t.at(r, c) * t.at(r, c);
    norms[r] = std::sqrt(s);
    if (!(norms[r] > 0.0)) throw ContractError("knn: zero embedding");
  }
  return norms;
}

}  // namespace

std::vector<int> KnnPredict(const numerics::Tensor& train_embeddings, std::span<const int> train_labels,
                            const numerics::Tensor& test_embeddings, std::size_t k, int class_count) {
  const std::size_t n_train = train_embeddings.rows();
  if (train_labels.size() != n_train) throw ContractError("knn: label count differs from training rows");
  if (k == 0 || k > n_train) throw ContractError("knn: k must lie in [1, |train|]");
  if (train_embeddings.cols() != test_embeddings.cols()) throw ContractError("knn: embedding width mismatch");
  const auto train_norms = RowNorms(train_embeddings);
  const auto test_norms = RowNorms(test_embeddings);
  const std::size_t d = train_embeddings.cols();

  std::vector<int> predictions(test_embeddings.rows());
  std::vector<double> distance(n_train);
  std::vector<std::size_t> order(n_train);
  std::vector<std::size_t> votes(class_count);
  std::vector<double> summed(class_count);
  for (std::size_t t = 0; t < test_embeddings.rows(); ++t) {
    for (std::size_t i = 0; i < n_train; ++i) {
      double dot = 0.0;
      for (std::size_t c = 0; c < d; ++c) dot += test_embeddings.at(t, c) * train_embeddings.at(i, c);
      distance[i] = 1.0 - dot / (test_norms[t] * train_norms[i]);
    }
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t a, std::size_t b) {
                        return distance[a] < distance[b] || (distance[a] == distance[b] && a < b);
                      });
    std::fill(votes.begin(), votes.end(), 0);
    std::fill(summed.begin(), summed.end(), 0.0);
    for (std::size_t n = 0; n < k; ++n) {
      const int label = train_labels[order[n]];
      if (label < 0 || label >= class_count) throw ContractError("knn: label out of range");
      ++votes[label];
      summed[label] += distance[order[n]];
    }
    int best = 0;
    for (int c = 1; c < class_count; ++c) {
      if (votes[c] > votes[best] || (votes[c] == votes[best] && votes[c] > 0 && summed[c] < summed[best])) best = c;
    }
    predictions[t] = best;
  }
  return predictions;
}

double Top1Accuracy(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size() || predicted.empty()) throw ContractError("top1: size mismatch or empty");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) correct += predicted[i] == truth[i] ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(predicted.size());
}

double KnnTop1(const ssl::ParamVector& params, const ssl::EncoderConfig& cfg, const data::Dataset& dataset,
               const ProbeConfig& probe) {
  probe.Validate(dataset.size());
  auto gather = [&](const std::vector<std::size_t>& indices) {
    std::vector<data::Image> images;
    images.reserve(indices.size());
    for (auto i : indices) images.push_back(dataset.images[i]);
    return ssl::Encode(params, cfg, images);
  };
  std::vector<int> train_labels;
  for (auto i : probe.train_indices) train_labels.push_back(dataset.labels[i]);
  const auto predicted =
      KnnPredict(gather(probe.train_indices), train_labels, gather(probe.test_indices), probe.k, dataset.class_count);

  // Scoring is the only place test labels are read.
  std::vector<int> truth;
  for (auto i : probe.test_indices) truth.push_back(dataset.labels[i]);
  return Top1Accuracy(predicted, truth);
}

}  // namespace flsimco::eval
