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

#include "flsimco/federation/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "flsimco/common/errors.hpp"
#include "flsimco/common/log.hpp"
#include "flsimco/common/parallel.hpp"

namespace flsimco::federation {

void ExperimentConfig::Validate() const {
  mobility.Validate();
  camera.Validate();
  loss.Validate();
  sgd.Validate();
  partition.Validate();
  ssl::EncoderConfig probe_encoder;
  probe_encoder.hidden_widths = hidden_widths;
  probe_encoder.embed_dim = embed_dim;
  probe_encoder.Validate();
  if (data.source != "synthetic" && data.source != "cifar10" && data.source != "binary") {
    throw ContractError("data.source must be synthetic, cifar10 or binary");
  }
  if (data.source != "synthetic" && data.path.empty()) throw ContractError("data.path is required for " + data.source);
  if (round.max_rounds < 0) throw ContractError("round.max_rounds must be nonnegative");
  if (round.vehicles_per_round < 1 || round.vehicles_per_round > partition.n_vehicles) {
    throw ContractError("round.vehicles_per_round must lie in [1, n_vehicles]");
  }
  if (round.local_epochs < 1) throw ContractError("round.local_epochs must be at least 1");
  if (round.batch_size < 2) throw ContractError("round.batch_size must be at least 2");
  if (round.eval_stride < 1) throw ContractError("round.eval_stride must be at least 1");
  if (fedco.queue_capacity < fedco.upload_batch) throw ContractError("fedco.queue_capacity must be >= upload_batch");
  if (fedco.upload_batch < 1) throw ContractError("fedco.upload_batch must be positive");
  if (!(fedco.key_momentum >= 0.0 && fedco.key_momentum <= 1.0)) throw ContractError("fedco.key_momentum must lie in [0, 1]");
  if (probe.k < 1 || probe.train_per_class < 1 || probe.test_per_class < 1) {
    throw ContractError("probe sizes must be positive");
  }
}

namespace {

// Copies up to `per_class` images of each class into `probe`, taken from the
// front (or back) of the class's index list.
void AppendProbeImages(const data::Dataset& source, int per_class, bool from_end, data::Dataset& probe,
                       std::vector<std::size_t>& indices) {
  for (int c = 0; c < source.class_count; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < source.size(); ++i)
      if (source.labels[i] == c) members.push_back(i);
    if (from_end) std::reverse(members.begin(), members.end());
    const auto take = std::min<std::size_t>(members.size(), static_cast<std::size_t>(per_class));
    for (std::size_t k = 0; k < take; ++k) {
      indices.push_back(probe.size());
      probe.images.push_back(source.images[members[k]]);
      probe.labels.push_back(c);
    }
  }
}

}  // namespace

ExperimentData PrepareData(const ExperimentConfig& config) {
  config.Validate();
  ExperimentData out;
  const auto& dc = config.data;
  data::Dataset probe_train_source, probe_test_source;
  if (dc.source == "synthetic") {
    out.train = data::GenerateSynthetic({dc.classes, dc.per_class, dc.side, dc.seed, dc.noise});
    probe_train_source = data::GenerateSynthetic(
        {dc.classes, config.probe.train_per_class + config.probe.test_per_class, dc.side,
         DeriveSeed(dc.seed, 0, 0, "probe"), dc.noise});
    probe_test_source = probe_train_source;
  } else if (dc.source == "cifar10") {
    out.train = data::LoadCifar10(dc.path);
    probe_train_source = out.train;
    probe_test_source = data::LoadCifar10Test(dc.path);
  } else {
    out.train = data::LoadCifarBatch(dc.path, dc.side, dc.classes);
    probe_train_source = dc.probe_path.empty() ? out.train : data::LoadCifarBatch(dc.probe_path, dc.side, dc.classes);
    probe_test_source = probe_train_source;
  }
  out.train.Validate();

  out.probe_set.class_count = out.train.class_count;
  AppendProbeImages(probe_train_source, config.probe.train_per_class, false, out.probe_set, out.probe.train_indices);
  // Test images come from the other end of each class list when train and
  // test share a source, so the two sets do not overlap.
  AppendProbeImages(probe_test_source, config.probe.test_per_class, dc.source != "cifar10", out.probe_set,
                    out.probe.test_indices);
  out.probe.k = config.probe.k;
  out.probe.Validate(out.probe_set.size());

  const auto& first = out.train.images.front();
  out.encoder.width = first.width();
  out.encoder.height = first.height();
  out.encoder.channels = first.channels();
  out.encoder.hidden_widths = config.hidden_widths;
  out.encoder.embed_dim = config.embed_dim;
  out.encoder.Validate();
  return out;
}

ParamVector InitGlobal(const ssl::EncoderConfig& cfg, std::uint64_t seed) { return ssl::InitEncoderParams(cfg, seed); }

std::vector<std::size_t> SelectVehicles(std::vector<VehicleState>& pool, std::size_t count,
                                        const mobility::MobilityParams& mobility,
                                        const imaging::CameraParams& camera, Rng& rng) {
  if (count > pool.size()) {
    throw ContractError("select_vehicles: requested " + std::to_string(count) + " of a pool of " +
                        std::to_string(pool.size()));
  }
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, order.size() - 1);
    std::swap(order[i], order[pick(rng)]);
  }
  order.resize(count);
  std::sort(order.begin(), order.end());
  for (auto index : order) {
    pool[index].velocity = mobility::SampleVelocity(rng, mobility);
    pool[index].blur = imaging::ComputeBlurLevel(pool[index].velocity, camera);
  }
  return order;
}

ssl::LocalTrainConfig MakeLocalTrainConfig(const ExperimentConfig& config, const ssl::EncoderConfig& encoder) {
  ssl::LocalTrainConfig cfg;
  cfg.encoder = encoder;
  cfg.loss = config.loss;
  cfg.sgd = config.sgd;
  cfg.epochs = config.round.local_epochs;
  cfg.batch_size = config.round.batch_size;
  return cfg;
}

FedCoRoundResult FedCoRound(std::span<VehicleState* const> vehicles, const data::Dataset& dataset,
                            const ParamVector& global, ssl::KeyQueue& global_queue,
                            const ssl::LocalTrainConfig& train_cfg, const ssl::MocoConfig& moco, double lr,
                            std::uint64_t run_seed, int round, std::size_t workers) {
  if (global_queue.capacity() < moco.upload_batch) throw ContractError("fedco: queue capacity below upload batch");
  std::vector<ssl::MocoLocalResult> results(vehicles.size());
  ParallelFor(vehicles.size(), workers, [&](std::size_t i) {
    VehicleState& v = *vehicles[i];
    Rng rng = MakeRng(run_seed, static_cast<std::uint64_t>(v.id), static_cast<std::uint64_t>(round), "train");
    const auto images = data::ShardImages(dataset, v.shard);
    results[i] = ssl::MocoLocalTrain(images, v.blur, global, global_queue, train_cfg, moco, lr, rng);
  });
  FedCoRoundResult out;
  std::vector<ParamVector> models;
  for (std::size_t i = 0; i < vehicles.size(); ++i) {
    vehicles[i]->local_params = results[i].params;
    models.push_back(std::move(results[i].params));
    out.local_losses.push_back(results[i].epoch_losses.back());
    for (const auto& key : results[i].keys) global_queue.Push(key);
  }
  out.aggregate = AggregateFedAvg(models);
  return out;
}

ExperimentResult RunExperiment(const ExperimentConfig& config, Strategy strategy, std::uint64_t run_seed,
                               const ExperimentData& data,
                               const std::function<void(const RoundRecord&)>& on_record) {
  config.Validate();
  const std::size_t workers = WorkerCountFromEnv();
  const auto train_cfg = MakeLocalTrainConfig(config, data.encoder);
  const ssl::MocoConfig moco{config.fedco.key_momentum, config.fedco.upload_batch};

  auto make_pool = [&](std::uint64_t partition_seed) {
    auto shards = data::Partition(data.train, config.partition, partition_seed);
    std::vector<VehicleState> pool(shards.size());
    for (std::size_t v = 0; v < shards.size(); ++v) {
      pool[v].id = static_cast<int>(v);
      pool[v].shard = std::move(shards[v]);
    }
    return pool;
  };
  auto pool = make_pool(DeriveSeed(run_seed, 0, 0, "partition"));

  ExperimentResult result;
  result.final_params = InitGlobal(data.encoder, DeriveSeed(run_seed, 0, 0, "init"));
  Rng queue_rng = MakeRng(run_seed, 0, 0, "fedco-queue");
  ssl::KeyQueue queue;
  if (strategy == Strategy::kFedCo) queue = ssl::KeyQueue::Random(config.fedco.queue_capacity, data.encoder.embed_dim, queue_rng);

  const int rounds = config.round.max_rounds;
  for (int r = 0; r < rounds; ++r) {
    const auto started = std::chrono::steady_clock::now();
    if (config.data.redraw_shards && r > 0) {
      auto fresh = make_pool(DeriveSeed(run_seed, 0, static_cast<std::uint64_t>(r), "partition"));
      for (std::size_t v = 0; v < pool.size(); ++v) pool[v].shard = std::move(fresh[v].shard);
    }
    Rng select_rng = MakeRng(run_seed, 0, static_cast<std::uint64_t>(r), "select");
    const auto chosen = SelectVehicles(pool, static_cast<std::size_t>(config.round.vehicles_per_round),
                                       config.mobility, config.camera, select_rng);
    std::vector<VehicleState*> vehicles;
    for (auto index : chosen) vehicles.push_back(&pool[index]);
    const double lr = ssl::CosineLr(r, rounds, config.sgd.lr0, config.sgd.effective_lr_min());

    RoundRecord record;
    record.round = r;
    for (const auto* v : vehicles) {
      record.vehicle_ids.push_back(v->id);
      record.velocities.push_back(v->velocity.value);
      record.blur_levels.push_back(v->blur.pixels);
    }

    AggregationResult aggregate;
    if (strategy == Strategy::kFedCo) {
      auto fedco = FedCoRound(vehicles, data.train, result.final_params, queue, train_cfg, moco, lr, run_seed, r,
                              workers);
      aggregate = std::move(fedco.aggregate);
      record.local_losses = std::move(fedco.local_losses);
    } else {
      std::vector<ssl::LocalTrainResult> trained(vehicles.size());
      ParallelFor(vehicles.size(), workers, [&](std::size_t i) {
        const VehicleState& v = *vehicles[i];
        Rng rng = MakeRng(run_seed, static_cast<std::uint64_t>(v.id), static_cast<std::uint64_t>(r), "train");
        const auto images = data::ShardImages(data.train, v.shard);
        trained[i] = ssl::LocalTrain(images, v.blur, result.final_params, train_cfg, lr, rng);
      });
      std::vector<ParamVector> models;
      for (std::size_t i = 0; i < vehicles.size(); ++i) {
        vehicles[i]->local_params = trained[i].params;
        record.local_losses.push_back(trained[i].final_loss());
        models.push_back(std::move(trained[i].params));
      }
      switch (strategy) {
        case Strategy::kFlsimco:
          aggregate = AggregateFlsimco(models, record.blur_levels, config.round.normalize_weights);
          break;
        case Strategy::kFedAvg:
          aggregate = AggregateFedAvg(models);
          break;
        case Strategy::kDiscard:
          try {
            aggregate = AggregateDiscard(models, record.velocities, config.round.discard_threshold);
          } catch (const NoSurvivorsError&) {
            LogWarning("round " + std::to_string(r) + ": every vehicle exceeded the discard threshold; keeping the "
                       "previous global model");
            record.skipped = true;
            aggregate.params = result.final_params;
            aggregate.weights.assign(models.size(), 0.0);
          }
          break;
        case Strategy::kFedCo:
          break;
      }
    }
    result.final_params = std::move(aggregate.params);
    record.weights = std::move(aggregate.weights);
    record.mean_local_loss =
        std::accumulate(record.local_losses.begin(), record.local_losses.end(), 0.0) /
        static_cast<double>(record.local_losses.size());

    const bool evaluate = (r + 1) % config.round.eval_stride == 0 || r + 1 == rounds;
    record.top1 = evaluate ? eval::KnnTop1(result.final_params, data.encoder, data.probe_set, data.probe)
                           : std::numeric_limits<double>::quiet_NaN();
    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    LogInfo(std::string(StrategyName(strategy)) + " round " + std::to_string(r) + " took " +
            std::to_string(static_cast<long long>(elapsed_ms)) + " ms");
    if (on_record) on_record(record);
    result.records.push_back(std::move(record));
  }
  return result;
}

}  // namespace flsimco::federation
