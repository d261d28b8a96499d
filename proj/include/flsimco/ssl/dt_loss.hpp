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

#include <span>
#include <vector>

#include "flsimco/common/random.hpp"
#include "flsimco/imaging/augment.hpp"
#include "flsimco/ssl/encoder.hpp"

namespace flsimco::ssl {

struct DtLossConfig {
  double tau_alpha = 0.1;  // intra-anchor temperature; gradients flow here
  double tau_beta = 1.0;   // inter-anchor temperature; enters only the weight

  void Validate() const;
  bool operator==(const DtLossConfig&) const = default;
};

// Anchor q, positive key k+ and K negative keys, all unit vectors.
struct EmbeddingTriple {
  std::vector<double> anchor;
  std::vector<double> positive;
  std::vector<std::vector<double>> negatives;

  std::size_t negative_count() const { return negatives.size(); }
  // Throws ContractError on dimension mismatch or a norm off by > 1e-9.
  void Validate() const;
};

// 1 - softmax probability of the positive among {positive} u negatives,
// logits = dot / tau.
double DtWeight(const EmbeddingTriple& triple, double tau);

// -log softmax probability of the positive at temperature tau.
double InfoNce(const EmbeddingTriple& triple, double tau);

// sg[W_beta / W_alpha] * InfoNce(tau_alpha). K = 0 is a ContractError.
double DtLoss(const EmbeddingTriple& triple, const DtLossConfig& cfg);

// Mean DtLoss over the batch. Empty input is a ContractError.
double BatchLoss(std::span<const EmbeddingTriple> triples, const DtLossConfig& cfg);

// Same quantities from raw dot products. The dt_loss coefficient depends on
// values only, which is what makes it a stop-gradient constant.
double SoftmaxComplement(double positive_dot, std::span<const double> negative_dots, double tau);
double InfoNceFromDots(double positive_dot, std::span<const double> negative_dots, double tau);
double DtCoefficient(double positive_dot, std::span<const double> negative_dots, const DtLossConfig& cfg);

// For each image i: anchor = f(pi1(x_i)), positive = f(pi2(x_i)), negatives =
// f(x_j) for j != i (unaugmented), so K = M - 1. M < 2 is a ContractError.
std::vector<EmbeddingTriple> BuildTriples(const ParamVector& params, const EncoderConfig& cfg,
                                          std::span<const Image> batch, Rng& rng);

// Differentiable batch loss (mean over rows). Rows of `anchors`,
// `positives` and `keys` are embeddings of the same image; row i uses the
// keys j != i as negatives.
Var DtInBatchLoss(Var anchors, Var positives, Var keys, const DtLossConfig& cfg);

// Differentiable batch loss with a shared set of negatives (one per row of
// `negatives`), e.g. a key queue.
Var DtSharedNegativesLoss(Var anchors, Var positives, Var negatives, const DtLossConfig& cfg);

}  // namespace flsimco::ssl
