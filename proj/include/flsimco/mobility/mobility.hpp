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

#include "flsimco/common/random.hpp"

namespace flsimco::mobility {

// Truncated Gaussian velocity model, all quantities in m/s.
//
// The default mean is the midpoint of the velocity window. A mean of 0.5 m/s
// (far below v_min) is also valid input; the density then reduces to the
// left tail of the Gaussian restricted to the window.
struct MobilityParams {
  double mu = 29.17;
  double sigma = 8.0;
  double v_min = 16.67;
  double v_max = 41.67;

  // Throws ContractError unless sigma > 0 and v_min < v_max.
  void Validate() const;
  bool operator==(const MobilityParams&) const = default;
};

struct Velocity {
  double value = 0.0;  // m/s
  bool operator==(const Velocity&) const = default;
};

constexpr double KmhToMps(double kmh) { return kmh / 3.6; }

// Error function, |error| < 1e-12 over the real line. Power series below
// |x| = 3, continued fraction for erfc above.
double Erf(double x);

double TruncatedGaussianPdf(double v, const MobilityParams& p);
double TruncatedGaussianCdf(double v, const MobilityParams& p);

// Rejection sampling from the untruncated Gaussian.
Velocity SampleVelocity(Rng& rng, const MobilityParams& p);

}  // namespace flsimco::mobility
