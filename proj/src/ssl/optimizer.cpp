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

#include "flsimco/ssl/optimizer.hpp"

#include <cmath>
#include <numbers>

#include "flsimco/common/errors.hpp"

namespace flsimco::ssl {

void SgdConfig::Validate() const {
  if (!(lr0 > 0.0)) throw ContractError("sgd: lr0 must be positive");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw ContractError("sgd: momentum must lie in [0, 1)");
  if (!(weight_decay >= 0.0)) throw ContractError("sgd: weight_decay must be nonnegative");
  if (lr_min >= 0.0 && lr_min > lr0) throw ContractError("sgd: lr_min must not exceed lr0");
}

SgdOptimizer::SgdOptimizer(SgdConfig config, std::size_t size) : config_(config), buffer_(size, 0.0) {}

void SgdOptimizer::Step(ParamVector& params, const ParamVector& grads, double lr) {
  if (params.size() != buffer_.size() || grads.size() != buffer_.size()) {
    throw ContractError("sgd_step: parameter, gradient and buffer sizes differ");
  }
  for (double g : grads.values)
    if (!std::isfinite(g)) throw NumericalError("sgd_step: non-finite gradient");
  for (std::size_t i = 0; i < buffer_.size(); ++i) {
    buffer_[i] = config_.momentum * buffer_[i] + grads.values[i] + config_.weight_decay * params.values[i];
    params.values[i] -= lr * buffer_[i];
  }
}

double CosineLr(int round, int max_rounds, double lr0, double lr_min) {
  if (max_rounds <= 0 || round >= max_rounds) return round >= max_rounds ? lr_min : lr0;
  if (round <= 0) return lr0;
  const double progress = static_cast<double>(round) / max_rounds;
  return lr_min + 0.5 * (lr0 - lr_min) * (1.0 + std::cos(std::numbers::pi * progress));
}

}  // namespace flsimco::ssl
