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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "flsimco/common/random.hpp"
#include "flsimco/data/partition.hpp"
#include "flsimco/eval/probe.hpp"
#include "flsimco/federation/aggregation.hpp"
#include "flsimco/imaging/blur.hpp"
#include "flsimco/mobility/mobility.hpp"
#include "flsimco/ssl/local_train.hpp"
#include "flsimco/ssl/momentum_encoder.hpp"

namespace flsimco::federation {

struct DataConfig {
  std::string source = "synthetic";  // synthetic | cifar10 | binary
  std::string path;                  // cifar10 directory or binary batch file
  std::string probe_path;            // optional binary batch for the probe
  int classes = 10;
  int per_class = 5000;
  int side = 32;
  double noise = 0.1;
  std::uint64_t seed = 0;
  bool redraw_shards = false;  // re-partition every round

  bool operator==(const DataConfig&) const = default;
};

struct RoundConfig {
  int max_rounds = 150;
  int vehicles_per_round = 5;
  int local_epochs = 1;
  std::size_t batch_size = 32;
  double discard_threshold = 27.78;  // m/s, 100 km/h
  bool normalize_weights = true;
  int eval_stride = 1;

  bool operator==(const RoundConfig&) const = default;
};

struct FedCoConfig {
  std::size_t queue_capacity = 256;
  std::size_t upload_batch = 32;
  double key_momentum = 0.99;

  bool operator==(const FedCoConfig&) const = default;
};

struct ProbeSettings {
  std::size_t k = 20;
  int train_per_class = 100;
  int test_per_class = 100;

  bool operator==(const ProbeSettings&) const = default;
};

struct ExperimentConfig {
  mobility::MobilityParams mobility;
  imaging::CameraParams camera;
  std::vector<std::size_t> hidden_widths{256};
  std::size_t embed_dim = 128;
  ssl::DtLossConfig loss;
  ssl::SgdConfig sgd;
  DataConfig data;
  data::PartitionSpec partition;
  RoundConfig round;
  FedCoConfig fedco;
  ProbeSettings probe;

  // Checks every sub-config; throws ContractError.
  void Validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

// Training corpus plus the labelled probe set; shared by every run of a
// configuration.
struct ExperimentData {
  data::Dataset train;
  data::Dataset probe_set;
  eval::ProbeConfig probe;
  ssl::EncoderConfig encoder;
};

ExperimentData PrepareData(const ExperimentConfig& config);

struct VehicleState {
  int id = 0;
  mobility::Velocity velocity;
  imaging::BlurLevel blur;
  data::Shard shard;
  ParamVector local_params;
};

struct RoundRecord {
  int round = 0;
  std::vector<int> vehicle_ids;
  std::vector<double> velocities;
  std::vector<double> blur_levels;
  std::vector<double> local_losses;  // final-epoch loss per vehicle
  double mean_local_loss = 0.0;
  std::vector<double> weights;       // aggregation weight per vehicle
  double top1 = 0.0;                 // NaN when not evaluated this round
  bool skipped = false;              // aggregation kept the previous model
};

struct ExperimentResult {
  std::vector<RoundRecord> records;
  ParamVector final_params;
};

ParamVector InitGlobal(const ssl::EncoderConfig& cfg, std::uint64_t seed);

// Picks `count` distinct vehicles uniformly and gives each a fresh velocity
// and blur level. Returns pool indices in ascending order.
std::vector<std::size_t> SelectVehicles(std::vector<VehicleState>& pool, std::size_t count,
                                        const mobility::MobilityParams& mobility,
                                        const imaging::CameraParams& camera, Rng& rng);

struct FedCoRoundResult {
  AggregationResult aggregate;
  std::vector<double> local_losses;
};

// Each vehicle trains MoCo-style against `global_queue`; their keys are
// FIFO-appended to the queue in vehicle order and the models are averaged.
FedCoRoundResult FedCoRound(std::span<VehicleState* const> vehicles, const data::Dataset& dataset,
                            const ParamVector& global, ssl::KeyQueue& global_queue,
                            const ssl::LocalTrainConfig& train_cfg, const ssl::MocoConfig& moco, double lr,
                            std::uint64_t run_seed, int round, std::size_t workers);

ssl::LocalTrainConfig MakeLocalTrainConfig(const ExperimentConfig& config, const ssl::EncoderConfig& encoder);

// Init, then max_rounds of select -> local train -> aggregate -> evaluate.
// All randomness derives from `run_seed` and never from the strategy, so
// runs that differ only in strategy see identical partitions, selections,
// velocities and augmentations. `on_record` is called after each round.
ExperimentResult RunExperiment(const ExperimentConfig& config, Strategy strategy, std::uint64_t run_seed,
                               const ExperimentData& data,
                               const std::function<void(const RoundRecord&)>& on_record = {});

}  // namespace flsimco::federation
