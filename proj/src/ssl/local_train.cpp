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

#include "flsimco/ssl/local_train.hpp"

#include <algorithm>
#include <numeric>

#include "flsimco/common/errors.hpp"
#include "flsimco/numerics/ops.hpp"

namespace flsimco::ssl {

using namespace numerics;

double LocalTrainResult::final_loss() const {
  if (epoch_losses.empty()) throw ContractError("local_train: no epochs were run");
  return epoch_losses.back();
}

std::vector<std::vector<std::size_t>> MakeBatches(std::size_t count, std::size_t batch_size, Rng& rng) {
  if (batch_size < 2) throw ContractError("local_train: batch_size must be at least 2");
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<std::size_t>> batches;
  for (std::size_t start = 0; start < count; start += batch_size) {
    const std::size_t end = std::min(count, start + batch_size);
    if (end - start < 2) break;
    batches.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return batches;
}

double TrainStep(std::span<const Image> batch, ParamVector& params, SgdOptimizer& optimizer,
                 const LocalTrainConfig& cfg, double lr, Rng& rng) {
  std::vector<Image> view1, view2;
  view1.reserve(batch.size());
  view2.reserve(batch.size());
  for (const auto& img : batch) {
    view1.push_back(imaging::Augment(img, cfg.view1, rng));
    view2.push_back(imaging::Augment(img, cfg.view2, rng));
  }
  Graph graph;
  auto leaves = BindParameters(graph, params);
  const Var anchors = EncodeGraph(leaves, graph.Constant(ImagesToMatrix(view1, cfg.encoder)));
  const Var positives = EncodeGraph(leaves, graph.Constant(ImagesToMatrix(view2, cfg.encoder)));
  const Var keys = EncodeGraph(leaves, graph.Constant(ImagesToMatrix(batch, cfg.encoder)));
  const Var loss = DtInBatchLoss(anchors, positives, keys, cfg.loss);
  const double value = graph.Backward(loss);
  optimizer.Step(params, CollectGradients(graph, leaves, params.layout), lr);
  return value;
}

LocalTrainResult LocalTrain(std::span<const Image> shard, imaging::BlurLevel blur, const ParamVector& global,
                            const LocalTrainConfig& cfg, double lr, Rng& rng) {
  if (shard.size() < 2) throw ContractError("local_train: shard needs at least two images");
  if (cfg.epochs < 0) throw ContractError("local_train: epochs must be nonnegative");
  LocalTrainResult result{global, {}};
  if (cfg.epochs == 0) return result;

  std::vector<Image> blurred;
  blurred.reserve(shard.size());
  for (const auto& img : shard) blurred.push_back(imaging::ApplyMotionBlur(img, blur));

  SgdOptimizer optimizer(cfg.sgd, global.size());
  std::vector<Image> batch;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    double sum = 0.0;
    const auto batches = MakeBatches(blurred.size(), cfg.batch_size, rng);
    for (const auto& indices : batches) {
      batch.clear();
      for (auto i : indices) batch.push_back(blurred[i]);
      sum += TrainStep(batch, result.params, optimizer, cfg, lr, rng);
    }
    result.epoch_losses.push_back(sum / static_cast<double>(batches.size()));
  }
  return result;
}

}  // namespace flsimco::ssl
