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

#include "flsimco/eval/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flsimco/common/errors.hpp"
#include "flsimco/common/format.hpp"

namespace flsimco::eval {

CurveStats ComputeCurveStats(std::span<const double> losses) {
  if (losses.size() < 2) throw ContractError("curve_stats: need at least two points");
  CurveStats stats;
  stats.losses.assign(losses.begin(), losses.end());
  for (std::size_t r = 0; r + 1 < losses.size(); ++r) stats.differences.push_back(losses[r + 1] - losses[r]);
  const auto n = static_cast<double>(stats.differences.size());
  if (stats.differences.size() > 1) {
    double mean = 0.0;
    for (double d : stats.differences) mean += d;
    mean /= n;
    double ss = 0.0;
    for (double d : stats.differences) ss += (d - mean) * (d - mean);
    stats.difference_std = std::sqrt(ss / (n - 1.0));
  }
  stats.final_value = losses.back();
  stats.min_value = *std::min_element(losses.begin(), losses.end());
  return stats;
}

namespace {

double BestOf(const std::vector<double>& values) {
  double best = std::numeric_limits<double>::quiet_NaN();
  for (double v : values)
    if (!std::isnan(v) && (std::isnan(best) || v > best)) best = v;
  return best;
}

double LastOf(const std::vector<double>& values) {
  return values.empty() ? std::numeric_limits<double>::quiet_NaN() : values.back();
}

}  // namespace

ComparisonTable CompareRuns(std::span<const RunSeries> runs) {
  ComparisonTable table;
  if (runs.empty()) return table;
  const std::size_t rounds = runs.front().losses.size();
  std::vector<std::string> strategies;
  for (const auto& run : runs) {
    if (run.losses.size() != rounds || run.top1.size() != rounds) {
      throw ContractError("compare_runs: run " + run.strategy + "/" + run.seed + " has a different round count");
    }
    if (std::find(strategies.begin(), strategies.end(), run.strategy) == strategies.end())
      strategies.push_back(run.strategy);
  }

  std::vector<SummaryRow> means;
  for (const auto& strategy : strategies) {
    SummaryRow mean{strategy, "mean", static_cast<int>(rounds), 0.0, 0.0, 0.0, 0.0};
    int count = 0;
    for (const auto& run : runs) {
      if (run.strategy != strategy) continue;
      SummaryRow row{run.strategy, run.seed, static_cast<int>(rounds), LastOf(run.losses), LastOf(run.top1),
                     BestOf(run.top1), std::numeric_limits<double>::quiet_NaN()};
      if (rounds >= 2) row.curve_std = ComputeCurveStats(run.losses).difference_std;
      mean.final_loss += row.final_loss;
      mean.final_top1 += row.final_top1;
      mean.best_top1 += row.best_top1;
      mean.curve_std += row.curve_std;
      ++count;
      table.rows.push_back(row);
    }
    mean.final_loss /= count;
    mean.final_top1 /= count;
    mean.best_top1 /= count;
    mean.curve_std /= count;
    table.rows.push_back(mean);
    means.push_back(mean);
  }
  for (std::size_t a = 0; a < means.size(); ++a)
    for (std::size_t b = a + 1; b < means.size(); ++b) {
      table.deltas.push_back(StrategyDelta{means[a].strategy, means[b].strategy,
                                           means[a].final_top1 - means[b].final_top1,
                                           means[a].best_top1 - means[b].best_top1,
                                           means[a].curve_std - means[b].curve_std,
                                           means[a].final_loss - means[b].final_loss});
    }
  return table;
}

std::string SummaryCsv(const ComparisonTable& table) {
  std::string out = "strategy,seed,round,loss,top1,curve_std,best_top1\n";
  for (const auto& row : table.rows) {
    out += row.strategy + "," + row.seed + "," + std::to_string(row.rounds) + "," + FormatDouble(row.final_loss) +
           "," + FormatDouble(row.final_top1) + "," + FormatDouble(row.curve_std) + "," +
           FormatDouble(row.best_top1) + "\n";
  }
  return out;
}

std::string DeltasCsv(const ComparisonTable& table) {
  std::string out = "strategy_a,strategy_b,final_top1_delta,best_top1_delta,curve_std_delta,final_loss_delta\n";
  for (const auto& d : table.deltas) {
    out += d.strategy_a + "," + d.strategy_b + "," + FormatDouble(d.final_top1) + "," + FormatDouble(d.best_top1) +
           "," + FormatDouble(d.curve_std) + "," + FormatDouble(d.final_loss) + "\n";
  }
  return out;
}

}  // namespace flsimco::eval
