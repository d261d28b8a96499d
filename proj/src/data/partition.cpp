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

#include "flsimco/data/partition.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "flsimco/common/errors.hpp"
#include "flsimco/common/random.hpp"

namespace flsimco::data {

PartitionPolicy ParsePartitionPolicy(std::string_view name) {
  if (name == "iid") return PartitionPolicy::kIid;
  if (name == "dirichlet") return PartitionPolicy::kDirichlet;
  throw ContractError("unknown partition policy '" + std::string(name) + "'");
}

std::string_view PartitionPolicyName(PartitionPolicy policy) {
  return policy == PartitionPolicy::kIid ? "iid" : "dirichlet";
}

void PartitionSpec::Validate() const {
  if (n_vehicles <= 0) throw ContractError("partition: n_vehicles must be positive");
  if (min_per_vehicle <= 0) throw ContractError("partition: min_per_vehicle must be positive");
  if (policy == PartitionPolicy::kDirichlet && !(alpha > 0.0)) throw ContractError("partition: alpha must be positive");
}

namespace {

void CheckSize(const Dataset& dataset, const PartitionSpec& spec) {
  spec.Validate();
  dataset.Validate();
  const auto needed = static_cast<std::size_t>(spec.n_vehicles) * static_cast<std::size_t>(spec.min_per_vehicle);
  if (dataset.size() < needed) {
    throw DataError("partition: " + std::to_string(spec.n_vehicles) + " vehicles x " +
                    std::to_string(spec.min_per_vehicle) + " images need " + std::to_string(needed) +
                    " but the dataset has " + std::to_string(dataset.size()) + " (short by " +
                    std::to_string(needed - dataset.size()) + ")");
  }
}

std::vector<std::vector<std::size_t>> ShuffledByClass(const Dataset& dataset, Rng& rng) {
  std::vector<std::vector<std::size_t>> by_class(dataset.class_count);
  for (std::size_t i = 0; i < dataset.size(); ++i) by_class[dataset.labels[i]].push_back(i);
  for (auto& members : by_class) std::shuffle(members.begin(), members.end(), rng);
  return by_class;
}

std::vector<Shard> EmptyShards(int n) {
  std::vector<Shard> shards(n);
  for (int v = 0; v < n; ++v) shards[v].owner = v;
  return shards;
}

// Draws from the categorical `weights` restricted to entries with
// allowed[c]; falls back to uniform over allowed entries when they carry
// no mass.
int DrawRestricted(const std::vector<double>& weights, const std::vector<bool>& allowed, Rng& rng) {
  double total = 0.0;
  for (std::size_t c = 0; c < weights.size(); ++c)
    if (allowed[c]) total += weights[c];
  const bool uniform = !(total > 0.0);
  if (uniform) total = static_cast<double>(std::count(allowed.begin(), allowed.end(), true));
  double u = Uniform01(rng) * total;
  int last = -1;
  for (std::size_t c = 0; c < weights.size(); ++c) {
    if (!allowed[c]) continue;
    last = static_cast<int>(c);
    u -= uniform ? 1.0 : weights[c];
    if (u < 0.0) return last;
  }
  return last;
}

}  // namespace

std::vector<Shard> PartitionIid(const Dataset& dataset, const PartitionSpec& spec, std::uint64_t seed) {
  CheckSize(dataset, spec);
  Rng rng(DeriveSeed(seed, 0, 0, "partition-iid"));
  auto by_class = ShuffledByClass(dataset, rng);
  auto shards = EmptyShards(spec.n_vehicles);
  // Dealing the class-sorted list round-robin keeps both per-class counts
  // and shard sizes within one of each other.
  std::size_t next = 0;
  for (const auto& members : by_class) {
    for (auto index : members) {
      shards[next].indices.push_back(index);
      next = (next + 1) % shards.size();
    }
  }
  for (auto& s : shards) std::sort(s.indices.begin(), s.indices.end());
  return shards;
}

std::vector<Shard> PartitionDirichlet(const Dataset& dataset, const PartitionSpec& spec, std::uint64_t seed) {
  CheckSize(dataset, spec);
  Rng rng(DeriveSeed(seed, 0, 0, "partition-dirichlet"));
  const int n = spec.n_vehicles;
  const int classes = dataset.class_count;

  std::vector<std::vector<double>> proportions(n, std::vector<double>(classes));
  std::gamma_distribution<double> gamma(spec.alpha, 1.0);
  for (auto& p : proportions) {
    double total = 0.0;
    for (auto& x : p) total += (x = gamma(rng));
    if (total > 0.0) {
      for (auto& x : p) x /= total;
    } else {
      std::fill(p.begin(), p.end(), 1.0 / classes);
    }
  }

  auto by_class = ShuffledByClass(dataset, rng);
  // held[v][c]: indices of class c currently in shard v.
  std::vector<std::vector<std::vector<std::size_t>>> held(n, std::vector<std::vector<std::size_t>>(classes));
  for (int c = 0; c < classes; ++c) {
    const auto& members = by_class[c];
    double column = 0.0;
    for (int v = 0; v < n; ++v) column += proportions[v][c];
    std::vector<std::size_t> counts(n, 0);
    std::vector<std::pair<double, int>> remainders;
    std::size_t assigned = 0;
    for (int v = 0; v < n; ++v) {
      const double share = column > 0.0 ? proportions[v][c] / column : 1.0 / n;
      const double exact = share * static_cast<double>(members.size());
      counts[v] = static_cast<std::size_t>(exact);
      assigned += counts[v];
      remainders.emplace_back(exact - static_cast<double>(counts[v]), v);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; assigned < members.size(); ++i, ++assigned) ++counts[remainders[i % n].second];
    std::size_t cursor = 0;
    for (int v = 0; v < n; ++v)
      for (std::size_t k = 0; k < counts[v]; ++k) held[v][c].push_back(members[cursor++]);
  }

  std::vector<std::size_t> sizes(n, 0);
  for (int v = 0; v < n; ++v)
    for (const auto& list : held[v]) sizes[v] += list.size();

  const auto minimum = static_cast<std::size_t>(spec.min_per_vehicle);
  for (int v = 0; v < n; ++v) {
    while (sizes[v] < minimum) {
      std::vector<bool> available(classes, false);
      for (int u = 0; u < n; ++u) {
        if (u == v || sizes[u] <= minimum) continue;
        for (int c = 0; c < classes; ++c) available[c] = available[c] || !held[u][c].empty();
      }
      const int c = DrawRestricted(proportions[v], available, rng);
      int donor = -1;
      for (int u = 0; u < n; ++u) {
        if (u == v || sizes[u] <= minimum || held[u][c].empty()) continue;
        if (donor < 0 || held[u][c].size() > held[donor][c].size()) donor = u;
      }
      auto& source = held[donor][c];
      std::uniform_int_distribution<std::size_t> pick(0, source.size() - 1);
      const std::size_t k = pick(rng);
      held[v][c].push_back(source[k]);
      source[k] = source.back();
      source.pop_back();
      --sizes[donor];
      ++sizes[v];
    }
  }

  auto shards = EmptyShards(n);
  for (int v = 0; v < n; ++v) {
    for (const auto& list : held[v]) shards[v].indices.insert(shards[v].indices.end(), list.begin(), list.end());
    std::sort(shards[v].indices.begin(), shards[v].indices.end());
  }
  return shards;
}

std::vector<Shard> Partition(const Dataset& dataset, const PartitionSpec& spec, std::uint64_t seed) {
  return spec.policy == PartitionPolicy::kIid ? PartitionIid(dataset, spec, seed)
                                              : PartitionDirichlet(dataset, spec, seed);
}

double MaxClassFraction(const Dataset& dataset, const Shard& shard) {
  if (shard.indices.empty()) return 0.0;
  std::vector<std::size_t> counts(dataset.class_count, 0);
  for (auto i : shard.indices) ++counts[dataset.labels.at(i)];
  return static_cast<double>(*std::max_element(counts.begin(), counts.end())) /
         static_cast<double>(shard.indices.size());
}

}  // namespace flsimco::data
