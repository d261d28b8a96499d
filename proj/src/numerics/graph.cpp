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

#include "flsimco/numerics/graph.hpp"

#include <cmath>

#include "flsimco/common/errors.hpp"

namespace flsimco::numerics {

const Tensor& Var::value() const { return graph_->value(*this); }

Var Graph::Append(Node node) {
  nodes_.push_back(std::move(node));
  return Var(this, nodes_.size() - 1);
}

Var Graph::Parameter(Tensor value) {
  if (!value.AllFinite()) throw NumericalError("parameter: non-finite leaf value");
  value.set_requires_grad(true);
  Node node;
  node.value = std::move(value);
  node.needs_grad = true;
  return Append(std::move(node));
}

Var Graph::Constant(Tensor value) {
  if (!value.AllFinite()) throw NumericalError("constant: non-finite leaf value");
  value.set_requires_grad(false);
  Node node;
  node.value = std::move(value);
  return Append(std::move(node));
}

Var Graph::StopGradient(Var v) {
  Node node;
  node.value = value(v);
  node.value.set_requires_grad(false);
  node.value.ClearGrad();
  node.op = "stop_gradient";
  return Append(std::move(node));
}

Var Graph::Record(const char* op, Tensor value, std::vector<Var> inputs, Pullback pullback) {
  if (!value.AllFinite()) {
    throw NumericalError(std::string("numerical overflow: ") + op + " produced a non-finite value");
  }
  Node node;
  node.op = op;
  node.leaf = false;
  for (const auto& in : inputs) {
    if (&in.graph() != this) throw ContractError(std::string(op) + ": input belongs to another graph");
    node.inputs.push_back(in.id());
    node.needs_grad = node.needs_grad || nodes_.at(in.id()).needs_grad;
  }
  node.value = std::move(value);
  node.value.set_requires_grad(node.needs_grad);
  if (node.needs_grad) node.pullback = std::move(pullback);
  return Append(std::move(node));
}

Tensor Graph::grad(Var leaf) const {
  const auto& node = nodes_.at(leaf.id());
  if (!node.leaf || !node.needs_grad) throw ContractError("grad: not a parameter leaf");
  if (!node.value.has_grad()) return Tensor::Zeros(node.value.shape());
  return node.value.grad();
}

void Graph::ZeroGrad() {
  for (auto& node : nodes_) node.value.ClearGrad();
}

double Graph::Backward(Var root) {
  auto& top = nodes_.at(root.id());
  if (top.value.size() != 1) throw ContractError("Backward: root must be a scalar");
  double loss = top.value[0];
  if (!top.needs_grad) return loss;

  for (auto& node : nodes_) node.grad.clear();
  top.grad.assign(1, 1.0);

  std::vector<std::vector<double>*> input_grads;
  for (std::size_t id = root.id() + 1; id-- > 0;) {
    auto& node = nodes_[id];
    if (!node.needs_grad || node.grad.empty()) continue;
    if (node.leaf) {
      node.value.AccumulateGrad(node.grad);
      continue;
    }
    input_grads.assign(node.inputs.size(), nullptr);
    for (std::size_t k = 0; k < node.inputs.size(); ++k) {
      auto& in = nodes_[node.inputs[k]];
      if (!in.needs_grad) continue;
      if (in.grad.empty()) in.grad.assign(in.value.size(), 0.0);
      input_grads[k] = &in.grad;
    }
    node.pullback(node.grad, input_grads);
    for (auto* g : input_grads) {
      if (g == nullptr) continue;
      for (double v : *g) {
        if (!std::isfinite(v)) {
          throw NumericalError(std::string("numerical overflow: gradient of ") + node.op + " is non-finite");
        }
      }
    }
  }
  for (auto& node : nodes_) {
    node.grad.clear();
    node.grad.shrink_to_fit();
  }
  return loss;
}

std::vector<Var> Graph::parameters() const {
  std::vector<Var> out;
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    if (nodes_[id].leaf && nodes_[id].needs_grad) out.emplace_back(const_cast<Graph*>(this), id);
  }
  return out;
}

ForwardBackwardResult ForwardBackward(Graph& graph, Var root) {
  graph.ZeroGrad();
  ForwardBackwardResult result;
  result.loss = graph.Backward(root);
  for (auto leaf : graph.parameters()) result.gradients.push_back(graph.grad(leaf));
  return result;
}

}  // namespace flsimco::numerics
