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

#include "flsimco/common/random.hpp"
#include "flsimco/imaging/augment.hpp"
#include "flsimco/imaging/blur.hpp"
#include "flsimco/ssl/dt_loss.hpp"
#include "flsimco/ssl/encoder.hpp"
#include "flsimco/ssl/optimizer.hpp"

namespace flsimco::ssl {

struct LocalTrainConfig {
  EncoderConfig encoder;
  DtLossConfig loss;
  SgdConfig sgd;
  int epochs = 1;
  std::size_t batch_size = 32;
  imaging::AugmentationPolicy view1 = imaging::AugmentationPolicy::Pi1();
  imaging::AugmentationPolicy view2 = imaging::AugmentationPolicy::Pi2();
};

struct LocalTrainResult {
  ParamVector params;
  // Mean minibatch loss of each epoch.
  std::vector<double> epoch_losses;

  double final_loss() const;
};

// Shuffled minibatches of `batch_size` indices; a trailing batch with fewer
// than two images is dropped.
std::vector<std::vector<std::size_t>> MakeBatches(std::size_t count, std::size_t batch_size, Rng& rng);

// Starts from `global`, blurs the shard once at `blur`, then runs `epochs`
// passes of in-batch dual-temperature SGD at learning rate `lr`.
LocalTrainResult LocalTrain(std::span<const Image> shard, imaging::BlurLevel blur, const ParamVector& global,
                            const LocalTrainConfig& cfg, double lr, Rng& rng);

// One SGD step on one minibatch of (already blurred) images. Returns the
// batch loss before the update.
double TrainStep(std::span<const Image> batch, ParamVector& params, SgdOptimizer& optimizer,
                 const LocalTrainConfig& cfg, double lr, Rng& rng);

}  // namespace flsimco::ssl
