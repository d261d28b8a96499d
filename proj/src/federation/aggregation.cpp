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

#include "flsimco/federation/aggregation.hpp"

#include <string>

#include "flsimco/common/errors.hpp"
#include "flsimco/common/log.hpp"

namespace flsimco::federation {

Strategy ParseStrategy(std::string_view name) {
  if (name == "flsimco") return Strategy::kFlsimco;
  if (name == "fedavg") return Strategy::kFedAvg;
  if (name == "discard") return Strategy::kDiscard;
  if (name == "fedco") return Strategy::kFedCo;
  throw ContractError("unknown strategy '" + std::string(name) + "' (expected flsimco, fedavg, discard or fedco)");
}

std::string_view StrategyName(Strategy strategy) {
  switch (strategy) {
    case Strategy::kFlsimco: return "flsimco";
    case Strategy::kFedAvg: return "fedavg";
    case Strategy::kDiscard: return "discard";
    case Strategy::kFedCo: return "fedco";
  }
  return "unknown";
}

std::vector<double> FlsimcoWeights(std::span<const double> blurs, bool normalize) {
  const std::size_t n = blurs.size();
  if (n == 0) throw ContractError("aggregate_flsimco: no models");
  double total = 0.0;
  for (double l : blurs) {
    if (!(l >= 0.0)) throw ContractError("aggregate_flsimco: blur levels must be nonnegative");
    total += l;
  }
  if (n == 1) {
    LogWarning("aggregate_flsimco: single vehicle, passing its model through unchanged");
    return {1.0};
  }
  if (total == 0.0) return std::vector<double>(n, 1.0 / static_cast<double>(n));
  const double scale = normalize ? total * static_cast<double>(n - 1) : total;
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) weights[i] = (total - blurs[i]) / scale;
  return weights;
}

ParamVector WeightedSum(std::span<const ParamVector> params, std::span<const double> weights) {
  if (params.empty() || params.size() != weights.size()) throw ContractError("aggregate: params/weights mismatch");
  ParamVector out;
  out.layout = params.front().layout;
  out.values.assign(params.front().size(), 0.0);
  for (std::size_t m = 0; m < params.size(); ++m) {
    if (!(params[m].layout == out.layout) || params[m].size() != out.size()) {
      throw ContractError("aggregate: models have different layouts");
    }
    if (weights[m] == 0.0) continue;
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] += weights[m] * params[m].values[i];
  }
  return out;
}

AggregationResult AggregateFlsimco(std::span<const ParamVector> params, std::span<const double> blurs,
                                   bool normalize) {
  if (params.size() != blurs.size()) throw ContractError("aggregate_flsimco: params/blurs length mismatch");
  auto weights = FlsimcoWeights(blurs, normalize);
  return {WeightedSum(params, weights), std::move(weights)};
}

AggregationResult AggregateFedAvg(std::span<const ParamVector> params) {
  if (params.empty()) throw ContractError("aggregate_fedavg: no models");
  std::vector<double> weights(params.size(), 1.0 / static_cast<double>(params.size()));
  return {WeightedSum(params, weights), std::move(weights)};
}

AggregationResult AggregateDiscard(std::span<const ParamVector> params, std::span<const double> velocities,
                                   double threshold) {
  if (params.empty()) throw ContractError("aggregate_discard: no models");
  if (params.size() != velocities.size()) throw ContractError("aggregate_discard: params/velocities mismatch");
  std::size_t survivors = 0;
  for (double v : velocities) survivors += v <= threshold ? 1 : 0;
  if (survivors == 0) throw NoSurvivorsError("aggregate_discard: every vehicle exceeded the velocity threshold");
  std::vector<double> weights(params.size(), 0.0);
  for (std::size_t i = 0; i < params.size(); ++i)
    if (velocities[i] <= threshold) weights[i] = 1.0 / static_cast<double>(survivors);
  return {WeightedSum(params, weights), std::move(weights)};
}

}  // namespace flsimco::federation
