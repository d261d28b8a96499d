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

#include "flsimco/ssl/momentum_encoder.hpp"

#include <cmath>
#include <random>

#include "flsimco/common/errors.hpp"
#include "flsimco/numerics/ops.hpp"

namespace flsimco::ssl {

using namespace numerics;

KeyQueue::KeyQueue(std::size_t capacity, std::size_t dim) : capacity_(capacity), dim_(dim) {
  if (capacity == 0 || dim == 0) throw ContractError("key queue: capacity and dim must be positive");
}

KeyQueue KeyQueue::Random(std::size_t capacity, std::size_t dim, Rng& rng) {
  KeyQueue queue(capacity, dim);
  std::normal_distribution<double> normal;
  std::vector<double> key(dim);
  for (std::size_t i = 0; i < capacity; ++i) {
    double norm = 0.0;
    while (!(norm > 0.0)) {
      norm = 0.0;
      for (auto& x : key) {
        x = normal(rng);
        norm += x * x;
      }
    }
    norm = std::sqrt(norm);
    for (auto& x : key) x /= norm;
    queue.Push(key);
  }
  return queue;
}

void KeyQueue::Push(std::span<const double> key) {
  if (key.size() != dim_) throw ContractError("key queue: key dimension mismatch");
  double norm = 0.0;
  for (double x : key) norm += x * x;
  if (std::abs(std::sqrt(norm) - 1.0) > 1e-9) throw ContractError("key queue: keys must be unit norm");
  if (entries_.size() == capacity_) entries_.pop_front();
  entries_.emplace_back(key.begin(), key.end());
}

void KeyQueue::PushRows(const Tensor& keys) {
  for (std::size_t r = 0; r < keys.rows(); ++r)
    Push(keys.data().subspan(r * keys.cols(), keys.cols()));
}

Tensor KeyQueue::AsMatrix() const {
  if (entries_.empty()) throw ContractError("key queue: empty");
  std::vector<double> data;
  data.reserve(entries_.size() * dim_);
  for (const auto& e : entries_) data.insert(data.end(), e.begin(), e.end());
  return Tensor::Matrix(entries_.size(), dim_, std::move(data));
}

void MomentumUpdate(MomentumEncoderState& state, const ParamVector& query) {
  if (state.key_params.size() != query.size()) throw ContractError("momentum_update: shape mismatch");
  if (!(state.momentum >= 0.0 && state.momentum <= 1.0)) throw ContractError("momentum_update: m must lie in [0, 1]");
  const double m = state.momentum;
  for (std::size_t i = 0; i < query.size(); ++i) {
    state.key_params.values[i] = m * state.key_params.values[i] + (1.0 - m) * query.values[i];
  }
}

MocoLocalResult MocoLocalTrain(std::span<const Image> shard, imaging::BlurLevel blur, const ParamVector& global,
                               const KeyQueue& queue, const LocalTrainConfig& cfg, const MocoConfig& moco,
                               double lr, Rng& rng) {
  if (shard.size() < 2) throw ContractError("moco_local_train: shard needs at least two images");
  if (queue.dim() != cfg.encoder.embed_dim) throw ContractError("moco_local_train: queue dim differs from embed_dim");
  MocoLocalResult result{global, {}, {}};
  if (cfg.epochs <= 0) return result;

  std::vector<Image> blurred;
  for (const auto& img : shard) blurred.push_back(imaging::ApplyMotionBlur(img, blur));

  DtLossConfig info_nce = cfg.loss;
  info_nce.tau_beta = info_nce.tau_alpha;
  MomentumEncoderState state{global, moco.key_momentum, queue};
  SgdOptimizer optimizer(cfg.sgd, global.size());
  std::deque<std::vector<double>> recent;

  std::vector<Image> view1, view2;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    double sum = 0.0;
    const auto batches = MakeBatches(blurred.size(), cfg.batch_size, rng);
    for (const auto& indices : batches) {
      view1.clear();
      view2.clear();
      for (auto i : indices) {
        view1.push_back(imaging::Augment(blurred[i], cfg.view1, rng));
        view2.push_back(imaging::Augment(blurred[i], cfg.view2, rng));
      }
      const Tensor keys = Encode(state.key_params, cfg.encoder, view2);

      Graph graph;
      auto leaves = BindParameters(graph, result.params);
      const Var anchors = EncodeGraph(leaves, graph.Constant(ImagesToMatrix(view1, cfg.encoder)));
      const Var loss = DtSharedNegativesLoss(anchors, graph.Constant(keys), graph.Constant(state.queue.AsMatrix()),
                                             info_nce);
      sum += graph.Backward(loss);
      optimizer.Step(result.params, CollectGradients(graph, leaves, result.params.layout), lr);
      MomentumUpdate(state, result.params);

      state.queue.PushRows(keys);
      for (std::size_t r = 0; r < keys.rows(); ++r) {
        recent.emplace_back(keys.data().begin() + static_cast<std::ptrdiff_t>(r * keys.cols()),
                            keys.data().begin() + static_cast<std::ptrdiff_t>((r + 1) * keys.cols()));
        if (recent.size() > moco.upload_batch) recent.pop_front();
      }
    }
    result.epoch_losses.push_back(sum / static_cast<double>(batches.size()));
  }
  result.keys.assign(recent.begin(), recent.end());
  return result;
}

}  // namespace flsimco::ssl
