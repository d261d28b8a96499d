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

#include "flsimco/numerics/ops.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "flsimco/common/errors.hpp"

namespace flsimco::numerics {

namespace {

void RequireSameShape(const char* op, const Tensor& a, const Tensor& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ContractError(std::string(op) + ": shape mismatch (" + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                        std::to_string(b.cols()) + ")");
  }
}

Tensor Like(const Tensor& a) { return Tensor::Matrix(a.rows(), a.cols(), std::vector<double>(a.size())); }

template <typename Fn, typename Deriv>
Var Elementwise(const char* op, Var a, Fn fn, Deriv deriv) {
  const Tensor& x = a.value();
  Tensor out = Like(x);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = fn(x[i]);
  Graph* g = &a.graph();
  auto ia = a.id();
  auto io = g->size();
  return g->Record(op, std::move(out), {a}, [g, ia, io, deriv](auto dy, auto grads) {
    const Tensor& xv = g->value(Var(g, ia));
    const Tensor& yv = g->value(Var(g, io));
    auto& dx = *grads[0];
    for (std::size_t i = 0; i < dy.size(); ++i) dx[i] += dy[i] * deriv(xv[i], yv[i]);
  });
}

}  // namespace

Var MatMul(Var a, Var b) {
  const Tensor& A = a.value();
  const Tensor& B = b.value();
  const std::size_t n = A.rows(), k = A.cols(), m = B.cols();
  if (B.rows() != k) throw ContractError("matmul: inner dimensions differ");
  Tensor out = Tensor::Matrix(n, m, std::vector<double>(n * m, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = A[i * k + p];
      if (aip == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i * m + j] += aip * B[p * m + j];
    }
  }
  Graph* g = &a.graph();
  auto ia = a.id(), ib = b.id();
  return g->Record("matmul", std::move(out), {a, b}, [g, ia, ib, n, k, m](auto dy, auto grads) {
    const Tensor& Av = g->value(Var(g, ia));
    const Tensor& Bv = g->value(Var(g, ib));
    if (grads[0] != nullptr) {  // dA = dY . B^T
      auto& dA = *grads[0];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t p = 0; p < k; ++p) {
          double s = 0.0;
          for (std::size_t j = 0; j < m; ++j) s += dy[i * m + j] * Bv[p * m + j];
          dA[i * k + p] += s;
        }
    }
    if (grads[1] != nullptr) {  // dB = A^T . dY
      auto& dB = *grads[1];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t p = 0; p < k; ++p) {
          const double aip = Av[i * k + p];
          if (aip == 0.0) continue;
          for (std::size_t j = 0; j < m; ++j) dB[p * m + j] += aip * dy[i * m + j];
        }
    }
  });
}

Var MatMulTransposed(Var a, Var b) {
  const Tensor& A = a.value();
  const Tensor& B = b.value();
  const std::size_t n = A.rows(), k = A.cols(), m = B.rows();
  if (B.cols() != k) throw ContractError("matmul_transposed: inner dimensions differ");
  Tensor out = Tensor::Matrix(n, m, std::vector<double>(n * m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::size_t p = 0; p < k; ++p) s += A[i * k + p] * B[j * k + p];
      out[i * m + j] = s;
    }
  Graph* g = &a.graph();
  auto ia = a.id(), ib = b.id();
  return g->Record("matmul_transposed", std::move(out), {a, b}, [g, ia, ib, n, k, m](auto dy, auto grads) {
    const Tensor& Av = g->value(Var(g, ia));
    const Tensor& Bv = g->value(Var(g, ib));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const double d = dy[i * m + j];
        if (d == 0.0) continue;
        if (grads[0] != nullptr)
          for (std::size_t p = 0; p < k; ++p) (*grads[0])[i * k + p] += d * Bv[j * k + p];
        if (grads[1] != nullptr)
          for (std::size_t p = 0; p < k; ++p) (*grads[1])[j * k + p] += d * Av[i * k + p];
      }
  });
}

Var Add(Var a, Var b) {
  RequireSameShape("add", a.value(), b.value());
  Tensor out = Like(a.value());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.value()[i] + b.value()[i];
  return a.graph().Record("add", std::move(out), {a, b}, [](auto dy, auto grads) {
    for (auto* g : grads)
      if (g != nullptr)
        for (std::size_t i = 0; i < dy.size(); ++i) (*g)[i] += dy[i];
  });
}

Var Sub(Var a, Var b) {
  RequireSameShape("sub", a.value(), b.value());
  Tensor out = Like(a.value());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.value()[i] - b.value()[i];
  return a.graph().Record("sub", std::move(out), {a, b}, [](auto dy, auto grads) {
    if (grads[0] != nullptr)
      for (std::size_t i = 0; i < dy.size(); ++i) (*grads[0])[i] += dy[i];
    if (grads[1] != nullptr)
      for (std::size_t i = 0; i < dy.size(); ++i) (*grads[1])[i] -= dy[i];
  });
}

Var Mul(Var a, Var b) {
  RequireSameShape("mul", a.value(), b.value());
  Tensor out = Like(a.value());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.value()[i] * b.value()[i];
  Graph* g = &a.graph();
  auto ia = a.id(), ib = b.id();
  return g->Record("mul", std::move(out), {a, b}, [g, ia, ib](auto dy, auto grads) {
    const Tensor& Av = g->value(Var(g, ia));
    const Tensor& Bv = g->value(Var(g, ib));
    if (grads[0] != nullptr)
      for (std::size_t i = 0; i < dy.size(); ++i) (*grads[0])[i] += dy[i] * Bv[i];
    if (grads[1] != nullptr)
      for (std::size_t i = 0; i < dy.size(); ++i) (*grads[1])[i] += dy[i] * Av[i];
  });
}

Var AddRowBroadcast(Var a, Var row) {
  const Tensor& A = a.value();
  const Tensor& R = row.value();
  const std::size_t n = A.rows(), m = A.cols();
  if (R.size() != m) throw ContractError("add_row_broadcast: row length differs from column count");
  Tensor out = Like(A);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) out[i * m + j] = A[i * m + j] + R[j];
  return a.graph().Record("add_row_broadcast", std::move(out), {a, row}, [n, m](auto dy, auto grads) {
    if (grads[0] != nullptr)
      for (std::size_t i = 0; i < dy.size(); ++i) (*grads[0])[i] += dy[i];
    if (grads[1] != nullptr)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) (*grads[1])[j] += dy[i * m + j];
  });
}

Var Scale(Var a, double factor) {
  Tensor out = Like(a.value());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.value()[i] * factor;
  return a.graph().Record("scale", std::move(out), {a}, [factor](auto dy, auto grads) {
    for (std::size_t i = 0; i < dy.size(); ++i) (*grads[0])[i] += dy[i] * factor;
  });
}

Var Relu(Var a) {
  return Elementwise(
      "relu", a, [](double x) { return x > 0.0 ? x : 0.0; },
      [](double x, double) { return x > 0.0 ? 1.0 : 0.0; });
}

Var Tanh(Var a) {
  return Elementwise(
      "tanh", a, [](double x) { return std::tanh(x); }, [](double, double y) { return 1.0 - y * y; });
}

Var Exp(Var a) {
  return Elementwise(
      "exp", a, [](double x) { return std::exp(x); }, [](double, double y) { return y; });
}

Var Log(Var a) {
  return Elementwise(
      "log", a, [](double x) { return std::log(x); }, [](double x, double) { return 1.0 / x; });
}

Var Sum(Var a) {
  double s = 0.0;
  for (double v : a.value().data()) s += v;
  return a.graph().Record("sum", Tensor::Scalar(s), {a}, [](auto dy, auto grads) {
    for (auto& v : *grads[0]) v += dy[0];
  });
}

Var Mean(Var a) { return Scale(Sum(a), 1.0 / static_cast<double>(a.value().size())); }

Var SumRows(Var a) {
  const Tensor& A = a.value();
  const std::size_t n = A.rows(), m = A.cols();
  Tensor out = Tensor::Matrix(n, 1, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) out[i] += A[i * m + j];
  return a.graph().Record("sum_rows", std::move(out), {a}, [n, m](auto dy, auto grads) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) (*grads[0])[i * m + j] += dy[i];
  });
}

Var RowDot(Var a, Var b) {
  RequireSameShape("row_dot", a.value(), b.value());
  const Tensor& A = a.value();
  const Tensor& B = b.value();
  const std::size_t n = A.rows(), m = A.cols();
  Tensor out = Tensor::Matrix(n, 1, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) out[i] += A[i * m + j] * B[i * m + j];
  Graph* g = &a.graph();
  auto ia = a.id(), ib = b.id();
  return g->Record("row_dot", std::move(out), {a, b}, [g, ia, ib, n, m](auto dy, auto grads) {
    const Tensor& Av = g->value(Var(g, ia));
    const Tensor& Bv = g->value(Var(g, ib));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (grads[0] != nullptr) (*grads[0])[i * m + j] += dy[i] * Bv[i * m + j];
        if (grads[1] != nullptr) (*grads[1])[i * m + j] += dy[i] * Av[i * m + j];
      }
  });
}

Var L2NormalizeRows(Var a) {
  const Tensor& A = a.value();
  const std::size_t n = A.rows(), m = A.cols();
  Tensor out = Like(A);
  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s += A[i * m + j] * A[i * m + j];
    norms[i] = std::sqrt(s);
    if (!(norms[i] > std::numeric_limits<double>::min())) {
      throw NumericalError("l2_normalize: row " + std::to_string(i) + " is zero and cannot be normalized");
    }
    for (std::size_t j = 0; j < m; ++j) out[i * m + j] = A[i * m + j] / norms[i];
  }
  Graph* g = &a.graph();
  auto io = g->size();
  return g->Record("l2_normalize", std::move(out), {a},
                   [g, io, n, m, norms = std::move(norms)](auto dy, auto grads) {
                     // dx = (dy - y (y . dy)) / |x|
                     const Tensor& Y = g->value(Var(g, io));
                     for (std::size_t i = 0; i < n; ++i) {
                       double proj = 0.0;
                       for (std::size_t j = 0; j < m; ++j) proj += Y[i * m + j] * dy[i * m + j];
                       for (std::size_t j = 0; j < m; ++j)
                         (*grads[0])[i * m + j] += (dy[i * m + j] - Y[i * m + j] * proj) / norms[i];
                     }
                   });
}

}  // namespace flsimco::numerics
