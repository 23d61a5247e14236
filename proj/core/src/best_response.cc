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

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "adregret/equilibrium.h"
#include "adregret/error.h"
#include "adregret/regret.h"

namespace adregret {
namespace {

// Smallest and largest best response to each candidate valuation.
struct ResponseHull {
  double lo = 0.0;
  double hi = 0.0;
};

struct Inversion {
  double estimate = 0.0;
  std::string_view flag;  // empty when b* is a best response to exactly one v
};

Inversion InvertOnGrid(const std::vector<ResponseHull>& hulls,
                       const Grid& valuations, double target) {
  const int nv = valuations.size();
  int first = -1;
  int last = -1;
  for (int k = 0; k < nv; ++k) {
    if (hulls[k].lo - kTieTolerance <= target &&
        target <= hulls[k].hi + kTieTolerance) {
      if (first < 0) first = k;
      last = k;
    }
  }
  if (first >= 0) {
    return {0.5 * (valuations[first] + valuations[last]),
            first == last ? std::string_view() : flags::kValueRange};
  }
  if (target > hulls[nv - 1].hi) return {valuations.max(), flags::kAboveGrid};
  if (target < hulls[0].lo) return {valuations.min(), flags::kBelowGrid};
  for (int k = 0; k + 1 < nv; ++k) {
    if (hulls[k].hi < target && target < hulls[k + 1].lo) {
      return {0.5 * (valuations[k] + valuations[k + 1]), flags::kBracketed};
    }
  }
  // Only reachable when the response sets are not monotone in v.
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < nv; ++k) {
    const double d = std::max(hulls[k].lo - target, target - hulls[k].hi);
    best = std::min(best, d);
  }
  first = -1;
  for (int k = 0; k < nv; ++k) {
    const double d = std::max(hulls[k].lo - target, target - hulls[k].hi);
    if (d <= best + kTieTolerance) {
      if (first < 0) first = k;
      last = k;
    }
  }
  return {0.5 * (valuations[first] + valuations[last]), flags::kNearestValue};
}

// v = dTE/dQ by central differences of unit grid step around the grid point
// nearest `target`, one-sided at the grid edges. Empty when dQ = 0.
std::optional<double> InvertByFoc(const ResponseCurves& curves,
                                  double target) {
  const auto it = std::min_element(
      curves.bids.begin(), curves.bids.end(), [&](double a, double b) {
        return std::abs(a - std::round(target)) <
               std::abs(b - std::round(target));
      });
  const int k = static_cast<int>(it - curves.bids.begin());
  const int lo = std::max(0, k - 1);
  const int hi = std::min(curves.size() - 1, k + 1);
  const double dq = curves.q[hi] - curves.q[lo];
  if (lo == hi || dq == 0.0) return std::nullopt;
  return (curves.te[hi] - curves.te[lo]) / dq;
}

}  // namespace

ResponseCurves ComputeResponseCurves(const BidSequence& seq, int bidder,
                                     const Grid& bids, const Window& window,
                                     const AuctionRules& rules) {
  const ReplayTable table(seq, bidder, window, rules, bids);
  ResponseCurves curves;
  curves.bidder = bidder;
  curves.window = window;
  curves.bids.assign(bids.points().begin(), bids.points().end());
  curves.q.assign(bids.size(), 0.0);
  curves.te.assign(bids.size(), 0.0);
  for (int k = 0; k < bids.size(); ++k) {
    double q = 0.0;
    double te = 0.0;
    for (int s = 0; s < table.auctions(); ++s) {
      q += table.fixed(s, k).ctr;
      te += table.fixed(s, k).payment;
    }
    curves.q[k] = q / table.auctions();
    curves.te[k] = te / table.auctions();
  }
  return curves;
}

std::vector<double> BestResponseSet(const ResponseCurves& curves,
                                    double value) {
  std::vector<double> payoff(curves.size());
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < curves.size(); ++k) {
    payoff[k] = curves.q[k] * value - curves.te[k];
    best = std::max(best, payoff[k]);
  }
  std::vector<double> set;
  for (int k = 0; k < curves.size(); ++k) {
    if (payoff[k] >= best - kTieTolerance) set.push_back(curves.bids[k]);
  }
  return set;
}

BestResponseVariant VariantFor(Method method) {
  using V = BestResponseVariant;
  V v;
  switch (method) {
    case Method::kBestResponse:
      break;
    case Method::kBrFoc:
      v.solver = V::Solver::kFoc;
      break;
    case Method::kBrFocOutliers:
      v.solver = V::Solver::kFoc;
      v.bid_stat = V::BidStat::kMeanExcludingOutliers;
      break;
    case Method::kBrFullGame:
      v.span = V::Span::kFullGame;
      break;
    case Method::kBrAvgValue:
      v.aggregation = V::Aggregation::kPerAuction;
      break;
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  "'" + std::string(MethodName(method)) +
                      "' is not a best-response method");
  }
  return v;
}

double MeanExcludingOutliers(std::span<const double> bids, int* removed) {
  if (bids.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no bids to average");
  }
  double mean = 0.0;
  for (double b : bids) mean += b;
  mean /= static_cast<double>(bids.size());
  double var = 0.0;
  for (double b : bids) var += (b - mean) * (b - mean);
  const double threshold = 2.0 * std::sqrt(var / static_cast<double>(bids.size()));

  double kept_sum = 0.0;
  int kept = 0;
  for (double b : bids) {
    if (std::abs(b - mean) <= threshold) {
      kept_sum += b;
      ++kept;
    }
  }
  if (removed) *removed = static_cast<int>(bids.size()) - kept;
  return kept_sum / kept;
}

EstimateRecord EstimateBestResponse(const BidSequence& seq, int bidder,
                                    const AuctionRules& rules,
                                    const Window& window, Method method,
                                    const Grid& valuations, const Grid& bids) {
  using V = BestResponseVariant;
  const V variant = VariantFor(method);
  seq.CheckBidder(bidder);
  const Window span = variant.span == V::Span::kFullGame
                          ? Window::Full(seq.auctions())
                          : window;
  seq.CheckWindow(span);

  EstimateRecord record;
  record.bidder = bidder;
  record.method = method;
  record.label = std::string(MethodName(method));
  record.window = span;
  record.bid_count = span.size();

  const ResponseCurves curves =
      ComputeResponseCurves(seq, bidder, bids, span, rules);
  std::vector<ResponseHull> hulls(valuations.size());
  for (int k = 0; k < valuations.size(); ++k) {
    const std::vector<double> br = BestResponseSet(curves, valuations[k]);
    hulls[k] = {br.front(), br.back()};
  }

  auto invert = [&](double target) {
    if (variant.solver == V::Solver::kFoc) {
      if (auto v = InvertByFoc(curves, target)) return *v;
      record.AddFlag(flags::kFocDegenerate);
    }
    const Inversion inv = InvertOnGrid(hulls, valuations, target);
    if (!inv.flag.empty()) record.AddFlag(inv.flag);
    return inv.estimate;
  };

  std::vector<double> own;
  own.reserve(span.size());
  for (int t = span.first; t <= span.last; ++t) own.push_back(seq.bid(t, bidder));

  if (variant.aggregation == V::Aggregation::kPerAuction) {
    double total = 0.0;
    for (double b : own) total += invert(b);
    record.estimate = total / static_cast<double>(own.size());
    return record;
  }

  double target = 0.0;
  if (variant.bid_stat == V::BidStat::kMeanExcludingOutliers) {
    int removed = 0;
    target = MeanExcludingOutliers(own, &removed);
    if (removed > 0) record.AddFlag(flags::kOutliersRemoved);
  } else {
    for (double b : own) target += b;
    target /= static_cast<double>(own.size());
  }
  record.estimate = invert(target);
  return record;
}

}  // namespace adregret
