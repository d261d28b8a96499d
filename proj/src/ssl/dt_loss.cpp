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

#include "flsimco/ssl/dt_loss.hpp"

#include <cmath>
#include <string>

#include "flsimco/common/errors.hpp"
#include "flsimco/numerics/ops.hpp"

namespace flsimco::ssl {

using namespace numerics;

void DtLossConfig::Validate() const {
  if (!(tau_alpha > 0.0) || !(tau_beta > 0.0)) throw ContractError("dt_loss: temperatures must be positive");
}

namespace {

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void CheckUnit(std::span<const double> v, const char* what) {
  const double norm = std::sqrt(Dot(v, v));
  if (std::abs(norm - 1.0) > 1e-9) throw ContractError(std::string("triple: ") + what + " is not unit norm");
}

std::vector<double> NegativeDots(const EmbeddingTriple& t) {
  std::vector<double> dots;
  dots.reserve(t.negatives.size());
  for (const auto& n : t.negatives) dots.push_back(Dot(t.anchor, n));
  return dots;
}

// sum_j exp((n_j - p) / tau), the negatives' mass relative to the positive.
double RelativeNegativeMass(double positive_dot, std::span<const double> negative_dots, double tau) {
  double s = 0.0;
  for (double n : negative_dots) s += std::exp((n - positive_dot) / tau);
  return s;
}

}  // namespace

void EmbeddingTriple::Validate() const {
  if (anchor.empty() || positive.size() != anchor.size()) throw ContractError("triple: dimension mismatch");
  CheckUnit(anchor, "anchor");
  CheckUnit(positive, "positive");
  for (const auto& n : negatives) {
    if (n.size() != anchor.size()) throw ContractError("triple: negative dimension mismatch");
    CheckUnit(n, "negative");
  }
}

double SoftmaxComplement(double positive_dot, std::span<const double> negative_dots, double tau) {
  // 1 - 1/(1 + s) = s/(1 + s)
  const double s = RelativeNegativeMass(positive_dot, negative_dots, tau);
  return s / (1.0 + s);
}

double InfoNceFromDots(double positive_dot, std::span<const double> negative_dots, double tau) {
  return std::log1p(RelativeNegativeMass(positive_dot, negative_dots, tau));
}

double DtCoefficient(double positive_dot, std::span<const double> negative_dots, const DtLossConfig& cfg) {
  cfg.Validate();
  if (negative_dots.empty()) throw ContractError("dt_loss: no negatives available (W_alpha would be zero)");
  if (cfg.tau_alpha == cfg.tau_beta) return 1.0;
  const double w_alpha = SoftmaxComplement(positive_dot, negative_dots, cfg.tau_alpha);
  const double w_beta = SoftmaxComplement(positive_dot, negative_dots, cfg.tau_beta);
  if (!(w_alpha > 0.0)) throw NumericalError("dt_loss: W_alpha underflowed to zero");
  return w_beta / w_alpha;
}

double DtWeight(const EmbeddingTriple& triple, double tau) {
  if (!(tau > 0.0)) throw ContractError("dt_weight: tau must be positive");
  triple.Validate();
  const auto dots = NegativeDots(triple);
  return SoftmaxComplement(Dot(triple.anchor, triple.positive), dots, tau);
}

double InfoNce(const EmbeddingTriple& triple, double tau) {
  if (!(tau > 0.0)) throw ContractError("info_nce: tau must be positive");
  triple.Validate();
  return InfoNceFromDots(Dot(triple.anchor, triple.positive), NegativeDots(triple), tau);
}

double DtLoss(const EmbeddingTriple& triple, const DtLossConfig& cfg) {
  triple.Validate();
  const auto dots = NegativeDots(triple);
  const double pos = Dot(triple.anchor, triple.positive);
  return DtCoefficient(pos, dots, cfg) * InfoNceFromDots(pos, dots, cfg.tau_alpha);
}

double BatchLoss(std::span<const EmbeddingTriple> triples, const DtLossConfig& cfg) {
  if (triples.empty()) throw ContractError("batch_loss: empty batch");
  double sum = 0.0;
  for (const auto& t : triples) sum += DtLoss(t, cfg);
  return sum / static_cast<double>(triples.size());
}

std::vector<EmbeddingTriple> BuildTriples(const ParamVector& params, const EncoderConfig& cfg,
                                          std::span<const Image> batch, Rng& rng) {
  if (batch.size() < 2) throw ContractError("build_triples: need at least two images for negatives");
  std::vector<Image> view1, view2;
  for (const auto& img : batch) {
    view1.push_back(imaging::AugmentPi1(img, rng));
    view2.push_back(imaging::AugmentPi2(img, rng));
  }
  const Tensor q = Encode(params, cfg, view1);
  const Tensor k = Encode(params, cfg, view2);
  const Tensor keys = Encode(params, cfg, batch);
  const std::size_t d = cfg.embed_dim;
  auto row = [d](const Tensor& t, std::size_t i) {
    return std::vector<double>(t.data().begin() + static_cast<std::ptrdiff_t>(i * d),
                               t.data().begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
  };
  std::vector<EmbeddingTriple> out(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    out[i].anchor = row(q, i);
    out[i].positive = row(k, i);
    for (std::size_t j = 0; j < batch.size(); ++j)
      if (j != i) out[i].negatives.push_back(row(keys, j));
  }
  return out;
}

namespace {

// Builds mean_i c_i * (log(exp(p_i/t) + sum_j mask_ij exp(s_ij/t)) - p_i/t)
// with c_i computed from current values.
Var DtLossFromLogits(Var positive_dots, Var negative_dots, const std::vector<double>* mask, const DtLossConfig& cfg) {
  cfg.Validate();
  Graph& g = positive_dots.graph();
  const Tensor& pos = positive_dots.value();
  const Tensor& neg = negative_dots.value();
  const std::size_t rows = neg.rows(), cols = neg.cols();

  std::vector<double> coefficients(rows);
  std::vector<double> dots;
  for (std::size_t i = 0; i < rows; ++i) {
    dots.clear();
    for (std::size_t j = 0; j < cols; ++j)
      if (mask == nullptr || (*mask)[i * cols + j] != 0.0) dots.push_back(neg.at(i, j));
    coefficients[i] = DtCoefficient(pos[i], dots, cfg);
  }
  const Var coefficient = g.Constant(Tensor::Matrix(rows, 1, std::move(coefficients)));

  const double inv_tau = 1.0 / cfg.tau_alpha;
  const Var pos_logits = Scale(positive_dots, inv_tau);
  Var neg_exp = Exp(Scale(negative_dots, inv_tau));
  if (mask != nullptr) neg_exp = Mul(neg_exp, g.Constant(Tensor::Matrix(rows, cols, *mask)));
  const Var denominator = Add(Exp(pos_logits), SumRows(neg_exp));
  const Var per_anchor = Sub(Log(denominator), pos_logits);
  return Mean(Mul(coefficient, per_anchor));
}

}  // namespace

Var DtInBatchLoss(Var anchors, Var positives, Var keys, const DtLossConfig& cfg) {
  const std::size_t m = anchors.value().rows();
  if (m < 2) throw ContractError("dt_loss: need at least two rows for in-batch negatives");
  if (keys.value().rows() != m) throw ContractError("dt_loss: anchors and keys differ in row count");
  std::vector<double> mask(m * m, 1.0);
  for (std::size_t i = 0; i < m; ++i) mask[i * m + i] = 0.0;
  return DtLossFromLogits(RowDot(anchors, positives), MatMulTransposed(anchors, keys), &mask, cfg);
}

Var DtSharedNegativesLoss(Var anchors, Var positives, Var negatives, const DtLossConfig& cfg) {
  return DtLossFromLogits(RowDot(anchors, positives), MatMulTransposed(anchors, negatives), nullptr, cfg);
}

}  // namespace flsimco::ssl
