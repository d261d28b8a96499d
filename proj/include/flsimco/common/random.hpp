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
#include <random>
#include <string_view>

namespace flsimco {

using Rng = std::mt19937_64;

// splitmix64 finalizer.
constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t HashTag(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Stream seed for (master, entity, round, purpose). Streams for different
// purposes never share state, so adding a consumer of randomness in one
// place does not shift draws anywhere else.
constexpr std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t entity, std::uint64_t round,
                                   std::string_view purpose) {
  std::uint64_t h = Mix64(master);
  h = Mix64(h ^ HashTag(purpose));
  h = Mix64(h ^ (entity + 0x632be59bd9b4e019ULL));
  h = Mix64(h ^ (round + 0x8cb92ba72f3d8dd7ULL));
  return h;
}

inline Rng MakeRng(std::uint64_t master, std::uint64_t entity, std::uint64_t round,
                   std::string_view purpose) {
  return Rng(DeriveSeed(master, entity, round, purpose));
}

inline double Uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

inline double UniformIn(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline bool Bernoulli(Rng& rng, double p) { return Uniform01(rng) < p; }

}  // namespace flsimco
