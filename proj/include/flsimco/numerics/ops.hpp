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

#include "flsimco/numerics/graph.hpp"

// Differentiable primitives. Operands are viewed as matrices (see
// Tensor::rows/cols); every result is rank 2 except Sum and Mean, which
// return rank-0 scalars.
namespace flsimco::numerics {

Var MatMul(Var a, Var b);            // [n x k] . [k x m]
Var MatMulTransposed(Var a, Var b);  // [n x k] . [m x k]^T
Var Add(Var a, Var b);               // same shape
Var Sub(Var a, Var b);
Var Mul(Var a, Var b);               // elementwise
Var AddRowBroadcast(Var a, Var row); // [n x m] + [1 x m]
Var Scale(Var a, double factor);
Var Relu(Var a);
Var Tanh(Var a);
Var Exp(Var a);
Var Log(Var a);
Var Sum(Var a);
Var Mean(Var a);
Var SumRows(Var a);                  // [n x m] -> [n x 1]
Var RowDot(Var a, Var b);            // [n x m], [n x m] -> [n x 1]
// Divides each row by its L2 norm. A zero row is a NumericalError.
Var L2NormalizeRows(Var a);

inline Var operator+(Var a, Var b) { return Add(a, b); }
inline Var operator-(Var a, Var b) { return Sub(a, b); }
inline Var operator*(Var a, Var b) { return Mul(a, b); }
inline Var operator*(double s, Var a) { return Scale(a, s); }

}  // namespace flsimco::numerics
