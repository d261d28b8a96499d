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
#include <string>
#include <vector>

namespace flsimco::eval {

// Loss-curve stability: the sample standard deviation (n - 1 denominator)
// of successive differences loss[r + 1] - loss[r].
struct CurveStats {
  std::vector<double> losses;
  std::vector<double> differences;
  double difference_std = 0.0;
  double final_value = 0.0;
  double min_value = 0.0;
};

// Needs at least two points. With exactly two there is a single difference
// and its standard deviation is 0.
CurveStats ComputeCurveStats(std::span<const double> losses);

struct RunSeries {
  std::string strategy;
  std::string seed;
  std::vector<double> losses;  // per-round mean local loss
  std::vector<double> top1;    // per-round probe accuracy, NaN where skipped
};

struct SummaryRow {
  std::string strategy;
  std::string seed;  // "mean" for the across-seed row
  int rounds = 0;
  double final_loss = 0.0;
  double final_top1 = 0.0;
  double best_top1 = 0.0;
  double curve_std = 0.0;
};

struct StrategyDelta {
  std::string strategy_a;
  std::string strategy_b;
  double final_top1 = 0.0;  // a - b, on the mean rows
  double best_top1 = 0.0;
  double curve_std = 0.0;
  double final_loss = 0.0;
};

struct ComparisonTable {
  // Per run in input order, then one mean row per strategy after its runs.
  std::vector<SummaryRow> rows;
  std::vector<StrategyDelta> deltas;  // every strategy pair, first-seen order
};

// Throws ContractError when runs have different round counts.
ComparisonTable CompareRuns(std::span<const RunSeries> runs);

// Columns: strategy,seed,round,loss,top1,curve_std,best_top1.
std::string SummaryCsv(const ComparisonTable& table);
// Columns: strategy_a,strategy_b,final_top1_delta,best_top1_delta,curve_std_delta,final_loss_delta.
std::string DeltasCsv(const ComparisonTable& table);

}  // namespace flsimco::eval
