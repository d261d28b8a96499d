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

// Acceptance suite. Prints one line per criterion:
//
//   A<n> PASS|FAIL <what was measured> (<seconds> s, budget <seconds> s)
//
// and exits nonzero if any criterion fails. Pass criterion ids as arguments
// to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "flsimco/cli/commands.hpp"
#include "flsimco/cli/run_config.hpp"
#include "flsimco/common/random.hpp"
#include "flsimco/data/partition.hpp"
#include "flsimco/eval/curves.hpp"
#include "flsimco/federation/aggregation.hpp"
#include "flsimco/federation/experiment.hpp"
#include "flsimco/imaging/blur.hpp"
#include "flsimco/mobility/mobility.hpp"
#include "flsimco/numerics/graph.hpp"
#include "flsimco/ssl/dt_loss.hpp"
#include "flsimco/ssl/encoder.hpp"
#include "flsimco/ssl/momentum_encoder.hpp"

#ifndef FLSIMCO_CLI_PATH
#error "FLSIMCO_CLI_PATH must name the flsimco executable"
#endif

namespace {

using namespace flsimco;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double budget_s;
  std::function<Outcome()> run;
};

std::string Sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// A1: tape gradients of the in-batch loss vs central differences of a
// plain-double reimplementation.

using Matrix = std::vector<std::vector<double>>;

Matrix RandomMatrix(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix m(rows, std::vector<double>(cols));
  for (auto& row : m)
    for (auto& x : row) x = normal(rng);
  return m;
}

numerics::Tensor ToTensor(const Matrix& m) {
  std::vector<double> flat;
  for (const auto& row : m) flat.insert(flat.end(), row.begin(), row.end());
  return numerics::Tensor::Matrix(m.size(), m.front().size(), std::move(flat));
}

// Relu MLP with L2-normalised output. Parameters are read from `theta` in
// the order W0, b0, W1, b1, ..., each weight row-major [fan_in x fan_out].
Matrix OracleEncode(const Matrix& x, const std::vector<std::size_t>& widths, const std::vector<double>& theta) {
  Matrix h = x;
  std::size_t offset = 0;
  for (std::size_t layer = 0; layer + 1 < widths.size(); ++layer) {
    const std::size_t in = widths[layer], out = widths[layer + 1];
    const bool last = layer + 2 == widths.size();
    Matrix next(h.size(), std::vector<double>(out));
    for (std::size_t r = 0; r < h.size(); ++r) {
      for (std::size_t o = 0; o < out; ++o) {
        double acc = theta[offset + in * out + o];
        for (std::size_t i = 0; i < in; ++i) acc += h[r][i] * theta[offset + i * out + o];
        next[r][o] = last ? acc : std::max(0.0, acc);
      }
    }
    offset += in * out + out;
    h = std::move(next);
  }
  for (auto& row : h) {
    double norm = 0.0;
    for (double v : row) norm += v * v;
    norm = std::sqrt(norm);
    for (auto& v : row) v /= norm;
  }
  return h;
}

double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Per-anchor weights sg[W_b / W_a] with W_t = s_t / (1 + s_t),
// s_t = sum_j exp((n_j - p) / t), negatives j != i.
std::vector<double> OracleCoefficients(const Matrix& a, const Matrix& p, const Matrix& k, double ta, double tb) {
  std::vector<double> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double pos = Dot(a[i], p[i]);
    double sa = 0.0, sb = 0.0;
    for (std::size_t j = 0; j < k.size(); ++j) {
      if (j == i) continue;
      const double n = Dot(a[i], k[j]);
      sa += std::exp((n - pos) / ta);
      sb += std::exp((n - pos) / tb);
    }
    c[i] = (sb / (1.0 + sb)) / (sa / (1.0 + sa));
  }
  return c;
}

double OracleLoss(const Matrix& a, const Matrix& p, const Matrix& k, const std::vector<double>& c, double ta) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double pos = Dot(a[i], p[i]) / ta;
    double denom = std::exp(pos);
    for (std::size_t j = 0; j < k.size(); ++j)
      if (j != i) denom += std::exp(Dot(a[i], k[j]) / ta);
    total += c[i] * (std::log(denom) - pos);
  }
  return total / static_cast<double>(a.size());
}

Outcome GradientCheck() {
  constexpr std::size_t kInput = 12, kEmbed = 8, kBatch = 5;  // 4 negatives per anchor
  const std::vector<std::size_t> hidden{10, 9};
  const double eps = 1e-5;
  const ssl::DtLossConfig loss_cfg;  // tau_alpha 0.1, tau_beta 1
  double worst = 0.0, worst_value_gap = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(DeriveSeed(seed, 0, 0, "acceptance-a1"));
    const Matrix xa = RandomMatrix(kBatch, kInput, rng);
    const Matrix xp = RandomMatrix(kBatch, kInput, rng);
    const Matrix xk = RandomMatrix(kBatch, kInput, rng);

    ssl::EncoderConfig cfg;
    cfg.width = kInput;
    cfg.height = 1;
    cfg.channels = 1;
    cfg.hidden_widths = hidden;
    cfg.embed_dim = kEmbed;
    const auto params = ssl::InitEncoderParams(cfg, seed);

    numerics::Graph graph;
    const auto leaves = ssl::BindParameters(graph, params);
    const auto za = ssl::EncodeGraph(leaves, graph.Constant(ToTensor(xa)));
    const auto zp = ssl::EncodeGraph(leaves, graph.Constant(ToTensor(xp)));
    const auto zk = ssl::EncodeGraph(leaves, graph.Constant(ToTensor(xk)));
    const double tape_loss = graph.Backward(ssl::DtInBatchLoss(za, zp, zk, loss_cfg));
    const auto tape_grad = ssl::CollectGradients(graph, leaves, params.layout);

    std::vector<std::size_t> widths{kInput};
    widths.insert(widths.end(), hidden.begin(), hidden.end());
    widths.push_back(kEmbed);
    auto f = [&](const std::vector<double>& theta, const std::vector<double>& coef) {
      return OracleLoss(OracleEncode(xa, widths, theta), OracleEncode(xp, widths, theta),
                        OracleEncode(xk, widths, theta), coef, loss_cfg.tau_alpha);
    };
    // The weight is a constant of the step: freeze it at the current point.
    const auto coef = OracleCoefficients(OracleEncode(xa, widths, params.values), OracleEncode(xp, widths, params.values),
                                         OracleEncode(xk, widths, params.values), loss_cfg.tau_alpha,
                                         loss_cfg.tau_beta);
    worst_value_gap = std::max(worst_value_gap, std::abs(f(params.values, coef) - tape_loss));

    std::vector<double> theta = params.values;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double saved = theta[i];
      theta[i] = saved + eps;
      const double up = f(theta, coef);
      theta[i] = saved - eps;
      const double down = f(theta, coef);
      theta[i] = saved;
      const double fd = (up - down) / (2.0 * eps);
      const double analytic = tape_grad.values[i];
      const double scale = std::max({std::abs(fd), std::abs(analytic), 1e-8});
      worst = std::max(worst, std::abs(fd - analytic) / scale);
    }
  }
  return {worst < 1e-4 && worst_value_gap < 1e-10,
          "max relative error " + Sci(worst) + " (limit 1e-4), loss value gap " + Sci(worst_value_gap)};
}

// ---------------------------------------------------------------------------

std::vector<double> RandomUnit(std::size_t d, Rng& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> v(d);
  double n = 0.0;
  for (auto& x : v) {
    x = normal(rng);
    n += x * x;
  }
  for (auto& x : v) x /= std::sqrt(n);
  return v;
}

Outcome LossReduction() {
  const ssl::DtLossConfig cfg{0.2, 0.2};
  Rng rng(DeriveSeed(2, 0, 0, "acceptance-a2"));
  double worst = 0.0, worst_oracle = 0.0;
  for (int t = 0; t < 100; ++t) {
    ssl::EmbeddingTriple triple;
    const std::size_t d = 4 + static_cast<std::size_t>(t % 13);
    const std::size_t k = 1 + static_cast<std::size_t>(t % 17);
    triple.anchor = RandomUnit(d, rng);
    triple.positive = RandomUnit(d, rng);
    for (std::size_t j = 0; j < k; ++j) triple.negatives.push_back(RandomUnit(d, rng));
    const double dt = ssl::DtLoss(triple, cfg);
    double denom = std::exp(Dot(triple.anchor, triple.positive) / 0.2);
    const double num = denom;
    for (const auto& n : triple.negatives) denom += std::exp(Dot(triple.anchor, n) / 0.2);
    worst = std::max(worst, std::abs(dt - ssl::InfoNce(triple, 0.2)));
    worst_oracle = std::max(worst_oracle, std::abs(dt + std::log(num / denom)));
  }
  return {worst < 1e-12 && worst_oracle < 1e-12,
          "max |dt_loss - InfoNCE| " + Sci(worst) + ", vs direct softmax " + Sci(worst_oracle) + " (limit 1e-12)"};
}

// ---------------------------------------------------------------------------

Outcome AggregationAlgebra() {
  Rng rng(DeriveSeed(3, 0, 0, "acceptance-a3"));
  double worst_sum = 0.0, worst_equal = 0.0;
  int monotone_violations = 0;
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<std::size_t>(std::uniform_int_distribution<int>(2, 10)(rng));
    std::vector<double> blurs(n);
    for (auto& l : blurs) l = UniformIn(rng, 0.0, 20.0);
    ssl::ParamLayout layout;
    layout.Add("theta", 1, 16);
    std::vector<ssl::ParamVector> models(n);
    for (auto& m : models) {
      m.layout = layout;
      m.values.resize(16);
      for (auto& x : m.values) x = UniformIn(rng, -3.0, 3.0);
    }
    const auto w = federation::FlsimcoWeights(blurs);
    worst_sum = std::max(worst_sum, std::abs(std::accumulate(w.begin(), w.end(), 0.0) - 1.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (blurs[i] < blurs[j] && !(w[i] > w[j])) ++monotone_violations;

    const std::vector<double> equal(n, blurs.front());
    const auto flsimco = federation::AggregateFlsimco(models, equal);
    const auto fedavg = federation::AggregateFedAvg(models);
    for (std::size_t i = 0; i < 16; ++i)
      worst_equal = std::max(worst_equal, std::abs(flsimco.params.values[i] - fedavg.params.values[i]));
  }
  const auto pair = federation::FlsimcoWeights(std::vector<double>{1.0, 3.0});
  const bool exact = pair.size() == 2 && pair[0] == 0.75 && pair[1] == 0.25;
  return {worst_sum <= 1e-12 && monotone_violations == 0 && worst_equal <= 1e-12 && exact,
          "max |sum w - 1| " + Sci(worst_sum) + ", monotonicity violations " + std::to_string(monotone_violations) +
              ", equal-blur vs fedavg " + Sci(worst_equal) + ", L=[1,3] -> (" + Sci(pair[0]) + ", " + Sci(pair[1]) +
              ")"};
}

// ---------------------------------------------------------------------------

Outcome MobilityFidelity() {
  const mobility::MobilityParams p;  // 29.17, 8, 16.67, 41.67
  // Composite Simpson on a fine grid gives an independent CDF.
  constexpr int kIntervals = 20000;  // even
  const double h = (p.v_max - p.v_min) / kIntervals;
  std::vector<double> grid_cdf(kIntervals + 1, 0.0);
  for (int i = 2; i <= kIntervals; i += 2) {
    const double a = p.v_min + (i - 2) * h;
    const double piece = h / 3.0 *
                         (mobility::TruncatedGaussianPdf(a, p) + 4.0 * mobility::TruncatedGaussianPdf(a + h, p) +
                          mobility::TruncatedGaussianPdf(a + 2.0 * h, p));
    // Odd nodes: half-interval Simpson would need another midpoint; use the
    // trapezoid for them, which is far below the KS tolerance.
    grid_cdf[i - 1] = grid_cdf[i - 2] + 0.5 * h * (mobility::TruncatedGaussianPdf(a, p) +
                                                    mobility::TruncatedGaussianPdf(a + h, p));
    grid_cdf[i] = grid_cdf[i - 2] + piece;
  }
  const double mass = grid_cdf.back();
  auto cdf = [&](double v) {
    const double pos = (v - p.v_min) / h;
    const auto i = std::clamp(static_cast<int>(pos), 0, kIntervals - 1);
    const double frac = pos - i;
    return grid_cdf[i] + frac * (grid_cdf[i + 1] - grid_cdf[i]);
  };

  Rng rng(DeriveSeed(4, 0, 0, "acceptance-a4"));
  constexpr std::size_t kSamples = 100000;
  std::vector<double> samples(kSamples);
  std::size_t out_of_bounds = 0;
  for (auto& s : samples) {
    s = mobility::SampleVelocity(rng, p).value;
    if (s < p.v_min || s > p.v_max) ++out_of_bounds;
  }
  std::sort(samples.begin(), samples.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < kSamples; ++i) {
    const double f = cdf(samples[i]);
    ks = std::max({ks, std::abs(f - static_cast<double>(i + 1) / kSamples),
                   std::abs(f - static_cast<double>(i) / kSamples)});
  }
  return {out_of_bounds == 0 && ks < 0.01 && std::abs(mass - 1.0) < 1e-6,
          "out of bounds " + std::to_string(out_of_bounds) + ", KS " + Sci(ks) + " (limit 0.01), |pdf mass - 1| " +
              Sci(std::abs(mass - 1.0))};
}

// ---------------------------------------------------------------------------

Outcome PartitionSkew() {
  const auto dataset = data::GenerateSynthetic({10, 200, 4, 5, 0.1});
  const std::vector<double> alphas{0.1, 1.0, 10.0};
  std::vector<double> mean_max(alphas.size(), 0.0);
  int undersized = 0;
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    data::PartitionSpec spec{data::PartitionPolicy::kDirichlet, alphas[a], 10, 100};
    double total = 0.0;
    int count = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      for (const auto& shard : data::PartitionDirichlet(dataset, spec, DeriveSeed(seed, 0, 0, "acceptance-a5"))) {
        if (shard.indices.size() < 100) ++undersized;
        total += data::MaxClassFraction(dataset, shard);
        ++count;
      }
    }
    mean_max[a] = total / count;
  }
  const bool ordered = mean_max[0] - mean_max[1] > 0.05 && mean_max[1] - mean_max[2] > 0.05;
  return {ordered && undersized == 0, "mean max-class fraction alpha 0.1/1/10 = " + Sci(mean_max[0]) + "/" +
                                          Sci(mean_max[1]) + "/" + Sci(mean_max[2]) + ", undersized shards " +
                                          std::to_string(undersized)};
}

// ---------------------------------------------------------------------------

Outcome BlurKernel() {
  constexpr std::size_t kW = 9, kH = 3, kCenter = 4;
  imaging::Image impulse(kW, kH, 1);
  impulse.at(kCenter, 1, 0) = 1.0;
  const auto blurred = imaging::ApplyMotionBlur(impulse, imaging::BlurLevel{3.0});
  double impulse_error = 0.0;
  for (std::size_t y = 0; y < kH; ++y)
    for (std::size_t x = 0; x < kW; ++x) {
      const bool lit = y == 1 && x + 1 >= kCenter && x <= kCenter + 1;
      impulse_error = std::max(impulse_error, std::abs(blurred.at(x, y, 0) - (lit ? 1.0 / 3.0 : 0.0)));
    }

  Rng rng(DeriveSeed(6, 0, 0, "acceptance-a6"));
  imaging::Image textured(7, 5, 3);
  for (auto& v : textured.pixels()) v = Uniform01(rng);
  bool identity = true;
  for (double level : {0.0, 0.2, 0.5}) identity = identity && imaging::ApplyMotionBlur(textured, {level}) == textured;

  double constant_error = 0.0;
  const imaging::Image constant(11, 4, 3, std::vector<double>(11 * 4 * 3, 0.37));
  for (double level : {2.0, 5.0, 9.0}) {
    const auto out = imaging::ApplyMotionBlur(constant, {level});
    for (std::size_t i = 0; i < out.pixels().size(); ++i)
      constant_error = std::max(constant_error, std::abs(out.pixels()[i] - 0.37));
  }
  return {impulse_error <= 1e-12 && identity && constant_error <= 1e-12,
          "impulse error " + Sci(impulse_error) + ", identity for L<=0.5 " + (identity ? "yes" : "no") +
              ", constant-image error " + Sci(constant_error)};
}

// ---------------------------------------------------------------------------

federation::ExperimentConfig DirectionalPreset() {
  federation::ExperimentConfig cfg;
  // mu chosen so that P(v > 27.78 m/s) = 0.40 under the truncated model.
  cfg.mobility.mu = 24.60;
  // Default camera: 0.36 px per m/s, so 6 to 15 px of blur on 8 px images.
  cfg.hidden_widths = {64};
  cfg.embed_dim = 32;
  cfg.sgd.lr0 = 0.06;
  cfg.data.classes = 4;
  cfg.data.per_class = 100;
  cfg.data.side = 8;
  cfg.data.noise = 0.35;
  cfg.data.seed = 7;
  cfg.partition.n_vehicles = 10;
  cfg.partition.min_per_vehicle = 20;
  cfg.round.max_rounds = 30;
  cfg.round.vehicles_per_round = 5;
  cfg.round.batch_size = 20;
  cfg.probe.train_per_class = 60;
  cfg.probe.test_per_class = 60;
  return cfg;
}

Outcome DirectionalReproduction() {
  const auto cfg = DirectionalPreset();
  const auto data = federation::PrepareData(cfg);
  int std_wins = 0, top1_wins = 0, above_chance = 0;
  int fast_draws = 0, draws = 0;
  std::ostringstream detail;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto run_seed = cli::RunSeed(0, seed);
    auto run = [&](federation::Strategy s) { return federation::RunExperiment(cfg, s, run_seed, data); };
    const auto flsimco = run(federation::Strategy::kFlsimco);
    const auto fedavg = run(federation::Strategy::kFedAvg);
    const auto discard = run(federation::Strategy::kDiscard);
    auto losses = [](const federation::ExperimentResult& r) {
      std::vector<double> out;
      for (const auto& rec : r.records) out.push_back(rec.mean_local_loss);
      return out;
    };
    for (const auto& rec : flsimco.records)
      for (double v : rec.velocities) {
        ++draws;
        fast_draws += v > cfg.round.discard_threshold;
      }
    const double std_f = eval::ComputeCurveStats(losses(flsimco)).difference_std;
    const double std_a = eval::ComputeCurveStats(losses(fedavg)).difference_std;
    const double top_f = flsimco.records.back().top1;
    const double top_d = discard.records.back().top1;
    std_wins += std_f < std_a;
    top1_wins += top_f >= top_d;
    above_chance += top_f > 0.35;
    detail << " seed" << seed << "[std " << Sci(std_f) << " vs " << Sci(std_a) << ", top1 " << Sci(top_f) << " vs "
           << Sci(top_d) << "]";
  }
  const double fast_share = static_cast<double>(fast_draws) / draws;
  return {std_wins == 3 && top1_wins >= 2 && above_chance == 3,
          "(a) std flsimco<fedavg " + std::to_string(std_wins) + "/3, (b) top1 flsimco>=discard " +
              std::to_string(top1_wins) + "/3, (c) top1>0.35 " + std::to_string(above_chance) + "/3, fast draws " +
              Sci(fast_share) + ";" + detail.str()};
}

// ---------------------------------------------------------------------------

std::string ReadFile(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome Determinism() {
  const auto root = std::filesystem::temp_directory_path() / ("flsimco_a8_" + std::to_string(::getpid()));
  std::filesystem::create_directories(root);
  cli::RunConfig config;
  config.experiment = DirectionalPreset();
  config.experiment.round.max_rounds = 4;
  config.strategies = {"flsimco", "fedco"};
  config.seeds = {0, 1};
  config.master_seed = 11;
  const auto config_path = root / "run.ini";
  {
    std::ofstream out(config_path);
    out << cli::SerializeConfig(config);
  }
  int status = 0;
  // Different worker counts must not change the bytes either.
  for (const char* workers : {"1", "3"}) {
    const std::string cmd = std::string("FLSIMCO_QUIET=1 FLSIMCO_WORKERS=") + workers + " \"" + FLSIMCO_CLI_PATH +
                            "\" run --config \"" + config_path.string() + "\" --out \"" +
                            (root / (std::string("out") + workers)).string() + "\"";
    status |= std::system(cmd.c_str());
  }
  const auto a = ReadFile(root / "out1" / "rounds.csv");
  const auto b = ReadFile(root / "out3" / "rounds.csv");
  const auto rows = std::count(a.begin(), a.end(), '\n');
  const bool same = status == 0 && !a.empty() && a == b;
  std::filesystem::remove_all(root);
  return {same && rows == 1 + 2 * 2 * 4, std::string("exit status ") + std::to_string(status) + ", rounds.csv " +
                                             std::to_string(a.size()) + " bytes, " + std::to_string(rows) +
                                             " lines, identical " + (same ? "yes" : "no")};
}

// ---------------------------------------------------------------------------

Outcome FedCoMechanics() {
  ssl::KeyQueue queue(4, 2);
  for (int i = 0; i < 6; ++i) {
    const double angle = 0.3 * i;
    queue.Push(std::vector<double>{std::cos(angle), std::sin(angle)});
  }
  bool fifo = queue.size() == 4;
  for (int i = 0; i < 4 && fifo; ++i) fifo = queue.entries()[i][0] == std::cos(0.3 * (i + 2));

  ssl::ParamLayout layout;
  layout.Add("w", 1, 1);
  auto blend = [&](double key, double query, double m) {
    ssl::MomentumEncoderState state{ssl::ParamVector{{key}, layout}, m, {}};
    ssl::MomentumUpdate(state, ssl::ParamVector{{query}, layout});
    return state.key_params.values[0];
  };
  const double blended = blend(2.0, 4.0, 0.99);
  const bool edges = blend(2.0, 4.0, 0.0) == 4.0 && blend(2.0, 4.0, 1.0) == 2.0 && blend(-1.5, 0.25, 0.0) == 0.25 &&
                     blend(-1.5, 0.25, 1.0) == -1.5;
  return {fifo && std::abs(blended - 2.02) < 1e-12 && edges,
          std::string("FIFO eviction ") + (fifo ? "ok" : "wrong") + ", m=0.99 blend 2,4 -> " +
              std::to_string(blended) + ", m in {0,1} exact " + (edges ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  setenv("FLSIMCO_QUIET", "1", 0);
  const std::vector<Criterion> criteria{
      {"A1", "gradient correctness", 10.0, GradientCheck},
      {"A2", "loss reduction identity", 1.0, LossReduction},
      {"A3", "aggregation algebra", 1.0, AggregationAlgebra},
      {"A4", "mobility fidelity", 5.0, MobilityFidelity},
      {"A5", "partition skew ordering", 30.0, PartitionSkew},
      {"A6", "blur kernel oracle", 1.0, BlurKernel},
      {"A7", "directional reproduction", 300.0, DirectionalReproduction},
      {"A8", "determinism", 60.0, Determinism},
      {"A9", "fedco mechanics", 1.0, FedCoMechanics},
  };
  std::vector<std::string> selected(argv + 1, argv + argc);
  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = outcome.pass && seconds < c.budget_s;
    failures += !pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, " (%.2f s, budget %.0f s)", seconds, c.budget_s);
    std::cout << c.id << (pass ? " PASS " : " FAIL ") << c.title << ": " << outcome.detail << timing << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
