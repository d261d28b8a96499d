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

#include "flsimco/numerics/finite_difference.hpp"

#include <algorithm>
#include <cmath>

#include "flsimco/common/errors.hpp"

namespace flsimco::numerics {

Tensor FiniteDifferenceGrad(const std::function<double(const Tensor&)>& f, const Tensor& x, double eps) {
  if (!(eps > 0.0)) throw ContractError("finite_difference_grad: eps must be positive");
  Tensor probe = x;
  Tensor out = Tensor::Zeros(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = probe[i];
    probe[i] = saved + eps;
    const double up = f(probe);
    probe[i] = saved - eps;
    const double down = f(probe);
    probe[i] = saved;
    out[i] = (up - down) / (2.0 * eps);
  }
  return out;
}

double MaxRelativeError(const Tensor& a, const Tensor& b, double floor) {
  if (a.size() != b.size()) throw ContractError("MaxRelativeError: size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max({std::abs(a[i]), std::abs(b[i]), floor});
    worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
  }
  return worst;
}

}  // namespace flsimco::numerics
