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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "flsimco/numerics/tensor.hpp"

namespace flsimco::numerics {

class Graph;

// Handle to a node of a Graph. Cheap to copy; valid as long as the graph.
class Var {
 public:
  Var() = default;
  Var(Graph* graph, std::size_t id) : graph_(graph), id_(id) {}

  Graph& graph() const { return *graph_; }
  std::size_t id() const { return id_; }
  const Tensor& value() const;

 private:
  Graph* graph_ = nullptr;
  std::size_t id_ = 0;
};

// Pullback of one primitive: receives the gradient w.r.t. the node output
// and adds its contribution to each input gradient. Entries of
// `input_grads` are null for inputs that do not need a gradient.
using Pullback =
    std::function<void(std::span<const double> out_grad, std::span<std::vector<double>* const> input_grads)>;

// Reverse-mode tape. Nodes are appended in evaluation order, so the tape
// is already topologically sorted and backward is a reverse sweep.
class Graph {
 public:
  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  // Leaf whose gradient is collected by Backward.
  Var Parameter(Tensor value);
  // Leaf that never receives a gradient.
  Var Constant(Tensor value);
  // Copies the current value of `v` into a fresh constant: whatever
  // depends on the result sees `v` as a constant.
  Var StopGradient(Var v);

  const Tensor& value(Var v) const { return nodes_.at(v.id()).value; }
  bool needs_grad(Var v) const { return nodes_.at(v.id()).needs_grad; }

  // Gradient accumulated at a parameter leaf by the last Backward call(s).
  Tensor grad(Var leaf) const;
  void ZeroGrad();

  // Seeds d(root)/d(root) = 1 and sweeps the tape. `root` must hold a single
  // element. Leaf gradients accumulate; intermediate gradients are dropped
  // afterwards. Returns the root value.
  double Backward(Var root);

  std::vector<Var> parameters() const;
  std::size_t size() const { return nodes_.size(); }

  // Used by the primitives in ops.hpp. Throws NumericalError naming `op`
  // if `value` is not finite.
  Var Record(const char* op, Tensor value, std::vector<Var> inputs, Pullback pullback);

 private:
  struct Node {
    Tensor value;
    const char* op = "leaf";
    std::vector<std::size_t> inputs;
    Pullback pullback;
    bool leaf = true;
    bool needs_grad = false;
    std::vector<double> grad;
  };

  Var Append(Node node);

  std::vector<Node> nodes_;
};

struct ForwardBackwardResult {
  double loss = 0.0;
  // One entry per Parameter leaf, in creation order.
  std::vector<Tensor> gradients;
};

ForwardBackwardResult ForwardBackward(Graph& graph, Var root);

}  // namespace flsimco::numerics
