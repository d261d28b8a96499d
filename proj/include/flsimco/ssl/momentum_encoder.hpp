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
#include <deque>
#include <span>
#include <vector>

#include "flsimco/common/random.hpp"
#include "flsimco/ssl/local_train.hpp"

namespace flsimco::ssl {

// FIFO of unit key vectors with fixed capacity; pushing onto a full queue
// evicts the oldest entry.
class KeyQueue {
 public:
  KeyQueue() = default;
  KeyQueue(std::size_t capacity, std::size_t dim);

  // Full queue of random unit vectors.
  static KeyQueue Random(std::size_t capacity, std::size_t dim, Rng& rng);

  void Push(std::span<const double> key);
  void PushRows(const Tensor& keys);

  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::size_t dim() const { return dim_; }
  const std::deque<std::vector<double>>& entries() const { return entries_; }
  // [size x dim]; throws on an empty queue.
  Tensor AsMatrix() const;

 private:
  std::size_t capacity_ = 0;
  std::size_t dim_ = 0;
  std::deque<std::vector<double>> entries_;
};

struct MomentumEncoderState {
  ParamVector key_params;
  double momentum = 0.99;
  KeyQueue queue;
};

// key <- m * key + (1 - m) * query, elementwise.
void MomentumUpdate(MomentumEncoderState& state, const ParamVector& query);

struct MocoConfig {
  double key_momentum = 0.99;
  // Keys uploaded per vehicle per round.
  std::size_t upload_batch = 32;
};

struct MocoLocalResult {
  ParamVector params;
  std::vector<double> epoch_losses;
  // Most recent keys, at most upload_batch of them, oldest first.
  std::vector<std::vector<double>> keys;
};

// MoCo-style local training: the query encoder starts from `global`, the key
// encoder is a momentum copy of it, and negatives come from a private copy of
// `queue` that is refreshed with the vehicle's own keys after every step.
// The loss is InfoNCE at cfg.loss.tau_alpha.
MocoLocalResult MocoLocalTrain(std::span<const Image> shard, imaging::BlurLevel blur, const ParamVector& global,
                               const KeyQueue& queue, const LocalTrainConfig& cfg, const MocoConfig& moco,
                               double lr, Rng& rng);

}  // namespace flsimco::ssl
