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

#ifndef ADREGRET_ESTIMATORS_H_
#define ADREGRET_ESTIMATORS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adregret/bid_sequence.h"
#include "adregret/regret.h"

namespace adregret {

enum class Method {
  kRegretMin,
  kAverageBid,
  kRegretWeighted,
  kCombined,
  kVcgNe,
  kVcgNeRaw,
  kBestResponse,
  kBrFoc,
  kBrFocOutliers,
  kBrFullGame,
  kBrAvgValue,
};

// CLI spelling, e.g. "regret-min", "br-foc-outliers".
std::string_view MethodName(Method method);
Method ParseMethod(std::string_view name);
std::vector<Method> AllMethods();

// Diagnostic flags attached to estimates.
namespace flags {
inline constexpr std::string_view kNonContiguousArgmin = "non_contiguous_argmin";
inline constexpr std::string_view kArgminRange = "argmin_range";
inline constexpr std::string_view kZeroRegretLimit = "zero_regret_limit";
inline constexpr std::string_view kUndefinedRelative = "undefined_relative";
inline constexpr std::string_view kAboveGrid = "above_grid";
inline constexpr std::string_view kBelowGrid = "below_grid";
inline constexpr std::string_view kBracketed = "bracketed";
inline constexpr std::string_view kValueRange = "value_range";
inline constexpr std::string_view kNearestValue = "nearest_value";
inline constexpr std::string_view kFocDegenerate = "foc_degenerate";
inline constexpr std::string_view kExcludedAuctions = "excluded_auctions";
inline constexpr std::string_view kMechanismMismatch = "mechanism_mismatch";
inline constexpr std::string_view kOutliersRemoved = "outliers_removed";
}  // namespace flags

struct EstimateRecord {
  int bidder = 0;
  Method method = Method::kRegretMin;
  // Method name, extended with the constituents for combined estimates.
  std::string label;
  double estimate = 0.0;
  Window window;
  std::vector<std::string> flags;
  // Grid valuations attaining the minimum (regret methods only).
  std::vector<double> argmin;
  int bid_count = 0;

  bool HasFlag(std::string_view flag) const;
  void AddFlag(std::string_view flag);
};

// Which quantity the argmin estimator minimizes.
enum class RegretObjective { kAbsolute, kRelative };

// v_hat = argmin_v Regret(v). A contiguous range of minimizers yields its
// midpoint. Minimizers within kTieTolerance of the minimum count as ties.
// A non-contiguous minimizer set yields the midpoint of its lowest run and
// is flagged.
EstimateRecord EstimateRegretMin(
    const RegretCurve& curve,
    RegretObjective objective = RegretObjective::kAbsolute);

// Mean of the bidder's raw logged bids over the window.
EstimateRecord EstimateAverageBid(const BidSequence& seq, int bidder,
                                  const Window& window);

// Zero-regret threshold for the weighted estimator, in coins.
inline constexpr double kZeroRegretTolerance = 1e-9;

// sum_v v / Regret(v) divided by sum_v 1 / Regret(v). When some regret is at
// or below kZeroRegretTolerance the formula's limit applies: the midpoint of
// the valuations with regret <= tolerance, flagged.
EstimateRecord EstimateRegretWeighted(const RegretCurve& curve);

// Unweighted mean of at least two estimates for the same bidder.
EstimateRecord CombineMean(std::span<const EstimateRecord> records);

// Regret-minimization for every bidder of a sequence.
std::vector<EstimateRecord> RegretMinEstimates(
    const BidSequence& seq, const AuctionRules& rules, const Window& window,
    const Grid& valuations = Grid::Default(),
    const Grid& bids = Grid::Default(),
    RegretObjective objective = RegretObjective::kAbsolute);

std::vector<EstimateRecord> AverageBidEstimates(const BidSequence& seq,
                                                const Window& window);

}  // namespace adregret

#endif  // ADREGRET_ESTIMATORS_H_
