// Copyright 2026 The adregret Authors. All rights reserved.
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

#include "adregret/estimators.h"

#include <algorithm>
#include <limits>
#include <optional>

#include "adregret/error.h"

namespace adregret {
namespace {

struct MethodEntry {
  Method method;
  std::string_view name;
};

constexpr MethodEntry kMethods[] = {
    {Method::kRegretMin, "regret-min"},
    {Method::kAverageBid, "avg-bid"},
    {Method::kRegretWeighted, "regret-weighted"},
    {Method::kCombined, "combined"},
    {Method::kVcgNe, "vcg-ne"},
    {Method::kVcgNeRaw, "vcg-ne-raw"},
    {Method::kBestResponse, "best-response"},
    {Method::kBrFoc, "br-foc"},
    {Method::kBrFocOutliers, "br-foc-outliers"},
    {Method::kBrFullGame, "br-full-game"},
    {Method::kBrAvgValue, "br-avg-value"},
};

EstimateRecord NewRecord(int bidder, Method method, const Window& window) {
  EstimateRecord r;
  r.bidder = bidder;
  r.method = method;
  r.label = std::string(MethodName(method));
  r.window = window;
  r.bid_count = window.size();
  return r;
}

}  // namespace

std::string_view MethodName(Method method) {
  for (const auto& e : kMethods) {
    if (e.method == method) return e.name;
  }
  return "unknown";
}

Method ParseMethod(std::string_view name) {
  for (const auto& e : kMethods) {
    if (e.name == name) return e.method;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown method '" + std::string(name) + "'");
}

std::vector<Method> AllMethods() {
  std::vector<Method> all;
  for (const auto& e : kMethods) all.push_back(e.method);
  return all;
}

bool EstimateRecord::HasFlag(std::string_view flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

void EstimateRecord::AddFlag(std::string_view flag) {
  if (!HasFlag(flag)) flags.emplace_back(flag);
}

EstimateRecord EstimateRegretMin(const RegretCurve& curve,
                                 RegretObjective objective) {
  if (curve.size() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "empty regret curve");
  }
  EstimateRecord record =
      NewRecord(curve.bidder, Method::kRegretMin, curve.window);

  std::vector<std::optional<double>> score(curve.size());
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < curve.size(); ++k) {
    const RegretReport& r = curve.reports[k];
    score[k] = objective == RegretObjective::kAbsolute
                   ? std::optional<double>(r.regret)
                   : r.relative;
    if (score[k]) best = std::min(best, *score[k]);
  }
  if (best == std::numeric_limits<double>::infinity()) {
    throw Error(ErrorCode::kUndefined,
                "relative regret undefined at every candidate value");
  }
  if (objective == RegretObjective::kRelative &&
      std::any_of(score.begin(), score.end(),
                  [](const auto& s) { return !s.has_value(); })) {
    record.AddFlag(flags::kUndefinedRelative);
  }

  std::vector<int> minimizers;
  for (int k = 0; k < curve.size(); ++k) {
    if (score[k] && *score[k] <= best + kTieTolerance) minimizers.push_back(k);
  }
  for (int k : minimizers) record.argmin.push_back(curve.values[k]);

  // The lowest run of consecutive grid indices.
  std::size_t run_end = 1;
  while (run_end < minimizers.size() &&
         minimizers[run_end] == minimizers[run_end - 1] + 1) {
    ++run_end;
  }
  if (run_end < minimizers.size()) record.AddFlag(flags::kNonContiguousArgmin);
  if (run_end > 1) record.AddFlag(flags::kArgminRange);
  record.estimate = 0.5 * (curve.values[minimizers.front()] +
                           curve.values[minimizers[run_end - 1]]);
  return record;
}

EstimateRecord EstimateAverageBid(const BidSequence& seq, int bidder,
                                  const Window& window) {
  seq.CheckBidder(bidder);
  seq.CheckWindow(window);
  EstimateRecord record = NewRecord(bidder, Method::kAverageBid, window);
  double total = 0.0;
  for (int t = window.first; t <= window.last; ++t) {
    total += seq.bid(t, bidder);
  }
  record.estimate = total / window.size();
  return record;
}

EstimateRecord EstimateRegretWeighted(const RegretCurve& curve) {
  if (curve.size() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "empty regret curve");
  }
  EstimateRecord record =
      NewRecord(curve.bidder, Method::kRegretWeighted, curve.window);

  double zero_lo = std::numeric_limits<double>::infinity();
  double zero_hi = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < curve.size(); ++k) {
    if (curve.reports[k].regret <= kZeroRegretTolerance) {
      zero_lo = std::min(zero_lo, curve.values[k]);
      zero_hi = std::max(zero_hi, curve.values[k]);
      record.argmin.push_back(curve.values[k]);
    }
  }
  if (!record.argmin.empty()) {
    record.AddFlag(flags::kZeroRegretLimit);
    record.estimate = 0.5 * (zero_lo + zero_hi);
    return record;
  }

  double weighted = 0.0;
  double weights = 0.0;
  for (int k = 0; k < curve.size(); ++k) {
    const double w = 1.0 / curve.reports[k].regret;
    weighted += curve.values[k] * w;
    weights += w;
  }
  record.estimate = weighted / weights;
  return record;
}

EstimateRecord CombineMean(std::span<const EstimateRecord> records) {
  if (records.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "combining needs at least two estimates");
  }
  EstimateRecord combined =
      NewRecord(records.front().bidder, Method::kCombined,
                records.front().window);
  combined.label += "(";
  double total = 0.0;
  for (std::size_t k = 0; k < records.size(); ++k) {
    const EstimateRecord& r = records[k];
    if (r.bidder != combined.bidder) {
      throw Error(ErrorCode::kInvalidArgument,
                  "cannot combine estimates of different bidders");
    }
    if (k > 0) combined.label += "+";
    combined.label += r.label;
    total += r.estimate;
    for (const auto& f : r.flags) combined.AddFlag(f);
  }
  combined.label += ")";
  combined.estimate = total / static_cast<double>(records.size());
  return combined;
}

std::vector<EstimateRecord> RegretMinEstimates(const BidSequence& seq,
                                               const AuctionRules& rules,
                                               const Window& window,
                                               const Grid& valuations,
                                               const Grid& bids,
                                               RegretObjective objective) {
  std::vector<EstimateRecord> out;
  for (int i = 0; i < seq.bidders(); ++i) {
    const RegretCurve curve =
        ComputeRegretCurve(seq, i, valuations, bids, window, rules);
    out.push_back(EstimateRegretMin(curve, objective));
  }
  return out;
}

std::vector<EstimateRecord> AverageBidEstimates(const BidSequence& seq,
                                                const Window& window) {
  std::vector<EstimateRecord> out;
  for (int i = 0; i < seq.bidders(); ++i) {
    out.push_back(EstimateAverageBid(seq, i, window));
  }
  return out;
}

}  // namespace adregret
