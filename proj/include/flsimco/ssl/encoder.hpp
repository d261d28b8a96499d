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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "flsimco/imaging/image.hpp"
#include "flsimco/numerics/graph.hpp"

namespace flsimco::ssl {

using imaging::Image;
using numerics::Graph;
using numerics::Tensor;
using numerics::Var;

// Multilayer perceptron: flattened image -> hidden layers (ReLU) -> linear
// projection to embed_dim -> L2 normalization.
struct EncoderConfig {
  std::size_t width = 32;
  std::size_t height = 32;
  std::size_t channels = 3;
  std::vector<std::size_t> hidden_widths{256};
  std::size_t embed_dim = 128;

  std::size_t input_size() const { return width * height * channels; }
  void Validate() const;
  bool operator==(const EncoderConfig&) const = default;
};

struct ParamSlot {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t offset = 0;

  std::size_t size() const { return rows * cols; }
  bool operator==(const ParamSlot&) const = default;
};

// Ordered (layer, tensor) manifest of a flat parameter vector.
class ParamLayout {
 public:
  ParamLayout() = default;
  static ParamLayout ForEncoder(const EncoderConfig& cfg);

  void Add(std::string name, std::size_t rows, std::size_t cols);
  const std::vector<ParamSlot>& slots() const { return slots_; }
  std::size_t total_size() const { return total_; }

  bool operator==(const ParamLayout&) const = default;

 private:
  std::vector<ParamSlot> slots_;
  std::size_t total_ = 0;
};

// Flat parameter vector: the unit exchanged between vehicles and the RSU.
struct ParamVector {
  std::vector<double> values;
  ParamLayout layout;

  std::size_t size() const { return values.size(); }
  Tensor Slot(std::size_t i) const;
  // Throws ContractError on manifest mismatch or non-finite entries.
  void Validate() const;
  bool operator==(const ParamVector&) const = default;
};

// Weights and biases uniform in +-1/sqrt(fan_in).
ParamVector InitEncoderParams(const EncoderConfig& cfg, std::uint64_t seed);

// [batch x input_size] matrix; throws on dimension mismatch.
Tensor ImagesToMatrix(std::span<const Image> images, const EncoderConfig& cfg);

// One Parameter leaf per slot, in layout order.
std::vector<Var> BindParameters(Graph& graph, const ParamVector& params);
// Same, but as constants (no gradient).
std::vector<Var> BindConstants(Graph& graph, const ParamVector& params);

Var EncodeGraph(const std::vector<Var>& params, Var inputs);

// Gradients of the leaves returned by BindParameters, as a ParamVector.
ParamVector CollectGradients(const Graph& graph, const std::vector<Var>& leaves, const ParamLayout& layout);

// Unit-norm embeddings, one row per image.
Tensor Encode(const ParamVector& params, const EncoderConfig& cfg, std::span<const Image> images);

}  // namespace flsimco::ssl
