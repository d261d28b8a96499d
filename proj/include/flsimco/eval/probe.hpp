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

#include "flsimco/data/dataset.hpp"
#include "flsimco/ssl/encoder.hpp"

namespace flsimco::eval {

// Frozen-encoder k-nearest-neighbour probe under cosine similarity.
struct ProbeConfig {
  std::size_t k = 20;
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;

  // Non-empty, disjoint, in range, and k <= |train|.
  void Validate(std::size_t dataset_size) const;
};

// Majority label among the k most cosine-similar training rows. Vote ties
// go to the class with the smaller summed distance (1 - cos), then to the
// lower class id; neighbour ties go to the lower training index. Test labels
// are not an input.
std::vector<int> KnnPredict(const numerics::Tensor& train_embeddings, std::span<const int> train_labels,
                            const numerics::Tensor& test_embeddings, std::size_t k, int class_count);

double Top1Accuracy(std::span<const int> predicted, std::span<const int> truth);

double KnnTop1(const ssl::ParamVector& params, const ssl::EncoderConfig& cfg, const data::Dataset& dataset,
               const ProbeConfig& probe);

}  // namespace flsimco::eval
