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

#include <cstdint>
#include <string_view>
#include <vector>

#include "flsimco/data/dataset.hpp"

namespace flsimco::data {

enum class PartitionPolicy { kIid, kDirichlet };

PartitionPolicy ParsePartitionPolicy(std::string_view name);
std::string_view PartitionPolicyName(PartitionPolicy policy);

struct PartitionSpec {
  PartitionPolicy policy = PartitionPolicy::kIid;
  double alpha = 0.1;
  int n_vehicles = 95;
  int min_per_vehicle = 520;

  void Validate() const;
  bool operator==(const PartitionSpec&) const = default;
};

// Class-balanced split of the whole dataset: every shard's count of each
// class is within one of |class| / n_vehicles.
std::vector<Shard> PartitionIid(const Dataset& dataset, const PartitionSpec& spec, std::uint64_t seed);

// Each vehicle draws class proportions p_v ~ Dirichlet(alpha); every class is
// split across vehicles in proportion to p_v[c]. Shards that end up below
// min_per_vehicle are then topped up one image at a time, the class drawn
// from the vehicle's own p_v and the image taken from a shard that stays at
// or above the minimum.
std::vector<Shard> PartitionDirichlet(const Dataset& dataset, const PartitionSpec& spec, std::uint64_t seed);

std::vector<Shard> Partition(const Dataset& dataset, const PartitionSpec& spec, std::uint64_t seed);

// Share of the most frequent class in a shard.
double MaxClassFraction(const Dataset& dataset, const Shard& shard);

}  // namespace flsimco::data
