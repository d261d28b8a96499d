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

#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "flsimco/ssl/encoder.hpp"

namespace flsimco::federation {

using ssl::ParamVector;

enum class Strategy { kFlsimco, kFedAvg, kDiscard, kFedCo };

Strategy ParseStrategy(std::string_view name);
std::string_view StrategyName(Strategy strategy);

struct AggregationResult {
  ParamVector params;
  // One weight per input model, in input order.
  std::vector<double> weights;
};

// Thrown by AggregateDiscard when every model is above the threshold.
class NoSurvivorsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Blur-aware weights w_n = (sum L - L_n) / sum L, so sharper (slower)
// vehicles weigh more. The raw weights sum to N - 1; with `normalize` they
// are divided by N - 1 to form a convex combination. All-zero blur gives
// uniform weights; a single model gets weight 1.
std::vector<double> FlsimcoWeights(std::span<const double> blurs, bool normalize = true);

ParamVector WeightedSum(std::span<const ParamVector> params, std::span<const double> weights);

AggregationResult AggregateFlsimco(std::span<const ParamVector> params, std::span<const double> blurs,
                                   bool normalize = true);
AggregationResult AggregateFedAvg(std::span<const ParamVector> params);
// FedAvg over the models whose velocity is <= threshold; discarded models
// get weight 0.
AggregationResult AggregateDiscard(std::span<const ParamVector> params, std::span<const double> velocities,
                                   double threshold);

}  // namespace flsimco::federation
