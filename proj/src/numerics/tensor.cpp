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

#include "flsimco/numerics/tensor.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "flsimco/common/errors.hpp"

namespace flsimco::numerics {

namespace {

std::size_t Product(const std::vector<std::size_t>& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  for (auto extent : shape_) {
    if (extent == 0) throw ContractError("Tensor: shape extents must be positive");
  }
  if (Product(shape_) != data_.size()) {
    throw ContractError("Tensor: data length " + std::to_string(data_.size()) +
                        " does not match shape product " + std::to_string(Product(shape_)));
  }
}

Tensor Tensor::Zeros(std::vector<std::size_t> shape) {
  auto n = Product(shape);
  return Tensor(std::move(shape), std::vector<double>(n, 0.0));
}

Tensor Tensor::Scalar(double value) { return Tensor({}, {value}); }

Tensor Tensor::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data) {
  return Tensor({rows, cols}, std::move(data));
}

std::size_t Tensor::rows() const {
  if (shape_.size() <= 1) return 1;
  return Product(shape_) / shape_.back();
}

std::size_t Tensor::cols() const {
  if (shape_.empty()) return 1;
  return shape_.back();
}

double Tensor::item() const {
  if (data_.size() != 1) throw ContractError("Tensor::item: tensor has " + std::to_string(data_.size()) + " elements");
  return data_[0];
}

Tensor Tensor::grad() const {
  if (!grad_) throw ContractError("Tensor::grad: no gradient accumulated");
  return Tensor(shape_, *grad_);
}

void Tensor::AccumulateGrad(std::span<const double> delta) {
  if (delta.size() != data_.size()) throw ContractError("Tensor::AccumulateGrad: size mismatch");
  if (!grad_) grad_.emplace(data_.size(), 0.0);
  for (std::size_t i = 0; i < delta.size(); ++i) (*grad_)[i] += delta[i];
}

bool Tensor::AllFinite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace flsimco::numerics
