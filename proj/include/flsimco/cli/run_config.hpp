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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "flsimco/federation/experiment.hpp"

namespace flsimco::cli {

struct RunConfig {
  federation::ExperimentConfig experiment;
  std::uint64_t master_seed = 0;
  std::string output_dir = "runs";
  std::vector<std::string> strategies{"flsimco", "fedavg", "discard", "fedco"};
  std::vector<std::uint64_t> seeds{0, 1, 2};

  bool operator==(const RunConfig&) const = default;
};

// Flat sections of `key = value` lines:
//
//   [loss]
//   tau_alpha = 0.1   # comment
//
// Lists are comma separated. A key before any section header is resolved by
// its bare name. Absent keys keep their defaults; unknown keys, malformed
// values and invalid settings raise ConfigError naming the key and line.
RunConfig ParseConfigText(std::string_view text);
RunConfig ParseConfig(const std::filesystem::path& path);

// Every key, one section after another, in a form ParseConfigText accepts.
std::string SerializeConfig(const RunConfig& config);

// Cross-field checks; throws ConfigError.
void ValidateConfig(const RunConfig& config);

}  // namespace flsimco::cli
