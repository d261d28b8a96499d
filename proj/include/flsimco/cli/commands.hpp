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
#include <vector>

#include "flsimco/cli/run_config.hpp"
#include "flsimco/eval/curves.hpp"
#include "flsimco/federation/experiment.hpp"

namespace flsimco::cli {

// Names of the files written into a run's output directory.
inline constexpr const char* kRoundsCsv = "rounds.csv";
inline constexpr const char* kRoundsJson = "rounds.json";
inline constexpr const char* kSummaryCsv = "summary.csv";
inline constexpr const char* kDeltasCsv = "deltas.csv";
inline constexpr const char* kConfigEcho = "config.ini";

std::string RoundsCsvHeader();
std::string RoundsCsvRow(const std::string& strategy, std::uint64_t seed, const federation::RoundRecord& record);

// One RunSeries per (strategy, seed) in first-seen order.
std::vector<eval::RunSeries> ReadRoundsCsv(const std::filesystem::path& file);

// Seed of one (strategy-independent) run.
std::uint64_t RunSeed(std::uint64_t master_seed, std::uint64_t seed);

// Runs every (strategy, seed) pair and writes all output files into
// `out_dir`. Returns the per-run series used for the summary.
std::vector<eval::RunSeries> RunAll(const RunConfig& config, const std::filesystem::path& out_dir);

// Recomputes summary.csv and deltas.csv from `dir`/rounds.csv.
void Summarize(const std::filesystem::path& dir);

// Synthetic corpus in the CIFAR binary record layout.
void GenerateData(const data::SyntheticSpec& spec, const std::filesystem::path& out);

// Command-line entry point. Exit codes: 0 success, 1 runtime failure,
// 2 usage error.
int Main(int argc, const char* const* argv);

}  // namespace flsimco::cli
