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

#include <vector>

#include "flsimco/ssl/encoder.hpp"

namespace flsimco::ssl {

struct SgdConfig {
  double lr0 = 0.9;
  // Negative means "1e-3 * lr0".
  double lr_min = -1.0;
  double momentum = 0.9;
  double weight_decay = 5e-4;

  double effective_lr_min() const { return lr_min < 0.0 ? 1e-3 * lr0 : lr_min; }
  void Validate() const;
  bool operator==(const SgdConfig&) const = default;
};

// SGD with classical momentum and L2 weight decay:
//   buffer <- momentum * buffer + (grad + weight_decay * param)
//   param  <- param - lr * buffer
class SgdOptimizer {
 public:
  SgdOptimizer(SgdConfig config, std::size_t size);

  // Throws NumericalError on non-finite gradients, ContractError on shape
  // mismatch.
  void Step(ParamVector& params, const ParamVector& grads, double lr);

  const std::vector<double>& buffer() const { return buffer_; }

 private:
  SgdConfig config_;
  std::vector<double> buffer_;
};

// lr_min + (lr0 - lr_min) (1 + cos(pi r / R)) / 2, clamped to lr_min past R.
double CosineLr(int round, int max_rounds, double lr0, double lr_min);

}  // namespace flsimco::ssl
