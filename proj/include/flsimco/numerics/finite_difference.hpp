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

#include <functional>

#include "flsimco/numerics/tensor.hpp"

namespace flsimco::numerics {

// Central-difference gradient (f(x + eps e_i) - f(x - eps e_i)) / (2 eps).
Tensor FiniteDifferenceGrad(const std::function<double(const Tensor&)>& f, const Tensor& x, double eps);

// |a - b| / max(|a|, |b|, floor), elementwise maximum over two tensors.
double MaxRelativeError(const Tensor& a, const Tensor& b, double floor = 1e-8);

}  // namespace flsimco::numerics
