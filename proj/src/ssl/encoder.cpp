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

#include "flsimco/ssl/encoder.hpp"

#include <cmath>

#include "flsimco/common/errors.hpp"
#include "flsimco/common/random.hpp"
#include "flsimco/numerics/ops.hpp"

namespace flsimco::ssl {

using namespace numerics;

void EncoderConfig::Validate() const {
  if (width == 0 || height == 0 || (channels != 1 && channels != 3)) {
    throw ContractError("encoder: input dims must be positive with 1 or 3 channels");
  }
  if (hidden_widths.empty()) throw ContractError("encoder: at least one hidden layer is required");
  for (auto w : hidden_widths)
    if (w == 0) throw ContractError("encoder: hidden widths must be positive");
  if (embed_dim < 2) throw ContractError("encoder: embed_dim must be at least 2");
}

ParamLayout ParamLayout::ForEncoder(const EncoderConfig& cfg) {
  cfg.Validate();
  ParamLayout layout;
  std::size_t fan_in = cfg.input_size();
  for (std::size_t l = 0; l < cfg.hidden_widths.size(); ++l) {
    layout.Add("hidden" + std::to_string(l) + ".weight", fan_in, cfg.hidden_widths[l]);
    layout.Add("hidden" + std::to_string(l) + ".bias", 1, cfg.hidden_widths[l]);
    fan_in = cfg.hidden_widths[l];
  }
  layout.Add("projection.weight", fan_in, cfg.embed_dim);
  layout.Add("projection.bias", 1, cfg.embed_dim);
  return layout;
}

void ParamLayout::Add(std::string name, std::size_t rows, std::size_t cols) {
  slots_.push_back(ParamSlot{std::move(name), rows, cols, total_});
  total_ += rows * cols;
}

Tensor ParamVector::Slot(std::size_t i) const {
  const auto& slot = layout.slots().at(i);
  std::vector<double> data(values.begin() + static_cast<std::ptrdiff_t>(slot.offset),
                           values.begin() + static_cast<std::ptrdiff_t>(slot.offset + slot.size()));
  return Tensor::Matrix(slot.rows, slot.cols, std::move(data));
}

void ParamVector::Validate() const {
  if (values.size() != layout.total_size()) throw ContractError("ParamVector: length does not match layout");
  for (double v : values)
    if (!std::isfinite(v)) throw ContractError("ParamVector: non-finite entry");
}

ParamVector InitEncoderParams(const EncoderConfig& cfg, std::uint64_t seed) {
  ParamVector params;
  params.layout = ParamLayout::ForEncoder(cfg);
  params.values.resize(params.layout.total_size());
  Rng rng(DeriveSeed(seed, 0, 0, "encoder-init"));
  const auto& slots = params.layout.slots();
  for (std::size_t i = 0; i < slots.size(); i += 2) {
    // weight and bias share the fan-in of the weight.
    const double bound = 1.0 / std::sqrt(static_cast<double>(slots[i].rows));
    for (std::size_t s = i; s < i + 2; ++s)
      for (std::size_t k = 0; k < slots[s].size(); ++k) params.values[slots[s].offset + k] = UniformIn(rng, -bound, bound);
  }
  return params;
}

Tensor ImagesToMatrix(std::span<const Image> images, const EncoderConfig& cfg) {
  if (images.empty()) throw ContractError("encode: empty batch");
  const std::size_t in = cfg.input_size();
  std::vector<double> data;
  data.reserve(images.size() * in);
  for (const auto& img : images) {
    if (img.width() != cfg.width || img.height() != cfg.height || img.channels() != cfg.channels) {
      throw ContractError("encode: image is " + std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                          "x" + std::to_string(img.channels()) + " but the encoder expects " +
                          std::to_string(cfg.width) + "x" + std::to_string(cfg.height) + "x" +
                          std::to_string(cfg.channels));
    }
    data.insert(data.end(), img.pixels().begin(), img.pixels().end());
  }
  return Tensor::Matrix(images.size(), in, std::move(data));
}

std::vector<Var> BindParameters(Graph& graph, const ParamVector& params) {
  params.Validate();
  std::vector<Var> out;
  for (std::size_t i = 0; i < params.layout.slots().size(); ++i) out.push_back(graph.Parameter(params.Slot(i)));
  return out;
}

std::vector<Var> BindConstants(Graph& graph, const ParamVector& params) {
  params.Validate();
  std::vector<Var> out;
  for (std::size_t i = 0; i < params.layout.slots().size(); ++i) out.push_back(graph.Constant(params.Slot(i)));
  return out;
}

Var EncodeGraph(const std::vector<Var>& params, Var inputs) {
  if (params.size() < 4 || params.size() % 2 != 0) throw ContractError("encode: malformed parameter list");
  Var h = inputs;
  for (std::size_t i = 0; i + 2 < params.size(); i += 2) h = Relu(AddRowBroadcast(MatMul(h, params[i]), params[i + 1]));
  const std::size_t last = params.size() - 2;
  Var z = AddRowBroadcast(MatMul(h, params[last]), params[last + 1]);
  return L2NormalizeRows(z);
}

ParamVector CollectGradients(const Graph& graph, const std::vector<Var>& leaves, const ParamLayout& layout) {
  ParamVector out;
  out.layout = layout;
  out.values.reserve(layout.total_size());
  for (const auto& leaf : leaves) {
    auto g = graph.grad(leaf);
    out.values.insert(out.values.end(), g.data().begin(), g.data().end());
  }
  if (out.values.size() != layout.total_size()) throw ContractError("CollectGradients: layout mismatch");
  return out;
}

Tensor Encode(const ParamVector& params, const EncoderConfig& cfg, std::span<const Image> images) {
  if (!(params.layout == ParamLayout::ForEncoder(cfg))) throw ContractError("encode: parameters do not match config");
  Graph graph;
  auto vars = BindConstants(graph, params);
  auto out = EncodeGraph(vars, graph.Constant(ImagesToMatrix(images, cfg)));
  return graph.value(out);
}

}  // namespace flsimco::ssl
