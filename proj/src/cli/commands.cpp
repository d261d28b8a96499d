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

#include "flsimco/cli/commands.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "flsimco/common/errors.hpp"
#include "flsimco/common/format.hpp"
#include "flsimco/common/log.hpp"
#include "flsimco/data/dataset.hpp"

namespace flsimco::cli {

namespace {

using nlohmann::json;

const std::vector<std::string> kColumns{"strategy",   "seed",    "round",        "vehicle_count",
                                        "mean_local_loss", "top1", "aggregate_weights", "vehicle_ids",
                                        "velocities", "blur_levels", "local_losses", "skipped"};

std::string JoinInts(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ";";
    out += std::to_string(values[i]);
  }
  return out;
}

// JSON has no NaN; unevaluated rounds carry null.
json JsonNumber(double value) { return std::isfinite(value) ? json(value) : json(nullptr); }

json JsonNumbers(const std::vector<double>& values) {
  json out = json::array();
  for (double v : values) out.push_back(JsonNumber(v));
  return out;
}

json RoundJson(const std::string& strategy, std::uint64_t seed, const federation::RoundRecord& r) {
  return json{{"strategy", strategy},
              {"seed", seed},
              {"round", r.round},
              {"vehicle_count", r.vehicle_ids.size()},
              {"mean_local_loss", JsonNumber(r.mean_local_loss)},
              {"top1", JsonNumber(r.top1)},
              {"aggregate_weights", JsonNumbers(r.weights)},
              {"vehicle_ids", r.vehicle_ids},
              {"velocities", JsonNumbers(r.velocities)},
              {"blur_levels", JsonNumbers(r.blur_levels)},
              {"local_losses", JsonNumbers(r.local_losses)},
              {"skipped", r.skipped}};
}

void WriteText(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + file.string());
}

std::string ReadText(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteSummary(const std::vector<eval::RunSeries>& series, const std::filesystem::path& dir) {
  const auto table = eval::CompareRuns(series);
  WriteText(dir / kSummaryCsv, eval::SummaryCsv(table));
  WriteText(dir / kDeltasCsv, eval::DeltasCsv(table));
}

constexpr const char* kUsage =
    "usage: flsimco <command> [options]\n"
    "\n"
    "commands:\n"
    "  run --config <path> [--out <dir>]   run every (strategy, seed) pair of a config\n"
    "  summarize --in <dir>                recompute summary.csv from rounds.csv\n"
    "  gen-data --classes C --per-class N --side S --seed K --out <path>\n"
    "                                      write a synthetic corpus in CIFAR binary layout\n"
    "\n"
    "environment: FLSIMCO_WORKERS sets the local-training thread count.\n";

}  // namespace

std::string RoundsCsvHeader() {
  std::string out;
  for (std::size_t i = 0; i < kColumns.size(); ++i) out += (i > 0 ? "," : "") + kColumns[i];
  return out + "\n";
}

std::string RoundsCsvRow(const std::string& strategy, std::uint64_t seed, const federation::RoundRecord& r) {
  std::string out = strategy;
  out += "," + std::to_string(seed);
  out += "," + std::to_string(r.round);
  out += "," + std::to_string(r.vehicle_ids.size());
  out += "," + FormatDouble(r.mean_local_loss);
  out += "," + FormatDouble(r.top1);
  out += "," + JoinDoubles(r.weights, ';');
  out += "," + JoinInts(r.vehicle_ids);
  out += "," + JoinDoubles(r.velocities, ';');
  out += "," + JoinDoubles(r.blur_levels, ';');
  out += "," + JoinDoubles(r.local_losses, ';');
  out += std::string(",") + (r.skipped ? "1" : "0");
  return out + "\n";
}

std::vector<eval::RunSeries> ReadRoundsCsv(const std::filesystem::path& file) {
  std::istringstream in(ReadText(file));
  std::string line;
  if (!std::getline(in, line) || line + "\n" != RoundsCsvHeader()) {
    throw DataError(file.string() + ": unexpected header");
  }
  std::vector<eval::RunSeries> series;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const auto cells = Split(line, ',');
    if (cells.size() != kColumns.size()) {
      throw DataError(file.string() + ":" + std::to_string(line_number) + ": expected " +
                      std::to_string(kColumns.size()) + " columns");
    }
    const auto key = std::make_pair(cells[0], cells[1]);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, series.size()).first;
      series.push_back(eval::RunSeries{cells[0], cells[1], {}, {}});
    }
    try {
      series[it->second].losses.push_back(ParseDouble(cells[4]));
      series[it->second].top1.push_back(ParseDouble(cells[5]));
    } catch (const std::invalid_argument& e) {
      throw DataError(file.string() + ":" + std::to_string(line_number) + ": " + e.what());
    }
  }
  return series;
}

std::uint64_t RunSeed(std::uint64_t master_seed, std::uint64_t seed) { return DeriveSeed(master_seed, seed, 0, "run"); }

std::vector<eval::RunSeries> RunAll(const RunConfig& config, const std::filesystem::path& out_dir) {
  ValidateConfig(config);
  std::filesystem::create_directories(out_dir);
  WriteText(out_dir / kConfigEcho, SerializeConfig(config));
  const auto data = federation::PrepareData(config.experiment);

  std::ofstream csv(out_dir / kRoundsCsv, std::ios::binary | std::ios::trunc);
  if (!csv) throw std::runtime_error("cannot write " + (out_dir / kRoundsCsv).string());
  csv << RoundsCsvHeader() << std::flush;
  json log = json::array();
  std::vector<eval::RunSeries> series;
  auto flush_json = [&] { WriteText(out_dir / kRoundsJson, log.dump(1) + "\n"); };

  try {
    for (const auto& name : config.strategies) {
      const auto strategy = federation::ParseStrategy(name);
      for (auto seed : config.seeds) {
        eval::RunSeries run{name, std::to_string(seed), {}, {}};
        federation::RunExperiment(config.experiment, strategy, RunSeed(config.master_seed, seed), data,
                                  [&](const federation::RoundRecord& record) {
                                    csv << RoundsCsvRow(name, seed, record) << std::flush;
                                    log.push_back(RoundJson(name, seed, record));
                                    run.losses.push_back(record.mean_local_loss);
                                    run.top1.push_back(record.top1);
                                  });
        series.push_back(std::move(run));
        flush_json();
      }
    }
  } catch (...) {
    flush_json();
    throw;
  }
  flush_json();
  WriteSummary(series, out_dir);
  return series;
}

void Summarize(const std::filesystem::path& dir) { WriteSummary(ReadRoundsCsv(dir / kRoundsCsv), dir); }

void GenerateData(const data::SyntheticSpec& spec, const std::filesystem::path& out) {
  if (spec.classes < 1 || spec.classes > 256 || spec.per_class < 1 || spec.side < 1) {
    throw ContractError("gen-data: classes must lie in [1, 256]; per-class and side must be positive");
  }
  if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
  data::WriteCifarBatch(data::GenerateSynthetic(spec), out);
}

int Main(int argc, const char* const* argv) {
  const std::vector<std::string> commands{"run", "summarize", "gen-data"};
  if (argc < 2 || std::find(commands.begin(), commands.end(), argv[1]) == commands.end()) {
    if (argc >= 2 && (std::string(argv[1]) == "--help" || std::string(argv[1]) == "-h")) {
      std::cout << kUsage;
      return 0;
    }
    std::cerr << kUsage;
    return 2;
  }

  CLI::App app{"flsimco"};
  app.require_subcommand(1);
  std::string config_path, out_dir, in_dir, data_out;
  data::SyntheticSpec spec;
  auto* run = app.add_subcommand("run", "run every (strategy, seed) pair of a config");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--out", out_dir, "output directory (overrides experiment.output_dir)");
  auto* summarize = app.add_subcommand("summarize", "recompute summary.csv from rounds.csv");
  summarize->add_option("--in", in_dir, "run output directory")->required();
  auto* gen = app.add_subcommand("gen-data", "write a synthetic corpus in CIFAR binary layout");
  gen->add_option("--classes", spec.classes)->required();
  gen->add_option("--per-class", spec.per_class)->required();
  gen->add_option("--side", spec.side)->required();
  gen->add_option("--seed", spec.seed)->required();
  gen->add_option("--noise", spec.noise);
  gen->add_option("--out", data_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) {
      const auto config = ParseConfig(config_path);
      RunAll(config, out_dir.empty() ? std::filesystem::path(config.output_dir) : std::filesystem::path(out_dir));
    } else if (summarize->parsed()) {
      Summarize(in_dir);
    } else {
      GenerateData(spec, data_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "flsimco: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace flsimco::cli
