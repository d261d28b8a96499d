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

#include "flsimco/mobility/mobility.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "flsimco/common/errors.hpp"

namespace flsimco::mobility {

void MobilityParams::Validate() const {
  if (!(sigma > 0.0)) throw ContractError("mobility: sigma must be positive");
  if (!(v_min < v_max)) throw ContractError("mobility: v_min must be below v_max");
  if (!std::isfinite(mu)) throw ContractError("mobility: mu must be finite");
}

namespace {

// erfc(x) for x >= 3 via the continued fraction
// erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))).
double ErfcContinuedFraction(double x) {
  double f = x;
  for (int n = 80; n >= 1; --n) f = x + (0.5 * n) / f;
  return std::exp(-x * x) / (std::sqrt(std::numbers::pi) * f);
}

// erf(x) = 2/sqrt(pi) exp(-x^2) sum_n 2^n x^(2n+1) / (2n+1)!!, all terms
// positive so no cancellation for x >= 0.
double ErfSeries(double x) {
  const double two_x2 = 2.0 * x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= two_x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return 2.0 / std::sqrt(std::numbers::pi) * std::exp(-x * x) * sum;
}

}  // namespace

double Erf(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::abs(x);
  double value;
  if (ax < 3.0) {
    value = ErfSeries(ax);
  } else if (ax > 27.0) {
    value = 1.0;
  } else {
    value = 1.0 - ErfcContinuedFraction(ax);
  }
  return x < 0 ? -value : value;
}

namespace {

double Normalizer(const MobilityParams& p) {
  const double s = p.sigma * std::numbers::sqrt2;
  return Erf((p.v_max - p.mu) / s) - Erf((p.v_min - p.mu) / s);
}

}  // namespace

double TruncatedGaussianPdf(double v, const MobilityParams& p) {
  p.Validate();
  if (v < p.v_min || v > p.v_max) return 0.0;
  const double z = v - p.mu;
  const double gauss = std::exp(-z * z / (2.0 * p.sigma * p.sigma));
  const double denom = std::sqrt(2.0 * std::numbers::pi * p.sigma * p.sigma) * Normalizer(p);
  // Gaussian mass inside the window is half the erf difference.
  return 2.0 * gauss / denom;
}

double TruncatedGaussianCdf(double v, const MobilityParams& p) {
  p.Validate();
  if (v <= p.v_min) return 0.0;
  if (v >= p.v_max) return 1.0;
  const double s = p.sigma * std::numbers::sqrt2;
  return (Erf((v - p.mu) / s) - Erf((p.v_min - p.mu) / s)) / Normalizer(p);
}

Velocity SampleVelocity(Rng& rng, const MobilityParams& p) {
  p.Validate();
  if (0.5 * Normalizer(p) < 1e-6) {
    // Window sits in a far tail; invert the CDF by bisection instead.
    const double u = Uniform01(rng);
    double lo = p.v_min, hi = p.v_max;
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
      const double mid = 0.5 * (lo + hi);
      (TruncatedGaussianCdf(mid, p) < u ? lo : hi) = mid;
    }
    return Velocity{0.5 * (lo + hi)};
  }
  std::normal_distribution<double> normal(p.mu, p.sigma);
  while (true) {
    const double v = normal(rng);
    if (v >= p.v_min && v <= p.v_max) return Velocity{v};
  }
}

}  // namespace flsimco::mobility
