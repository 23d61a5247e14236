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

// Equilibrium-based valuation estimators for position auctions.
//
// VCG-like NE: every auction is assumed to sit at the symmetric equilibrium
// with VCG prices, so the bidder in position k > 1 values a click at the
// incremental cost of moving up one slot,
//
//   v_k = (alpha_(k-1) b_k - alpha_k b_(k+1)) / (alpha_(k-1) - alpha_k),
//
// and the values must be nonincreasing down the ranking. Profiles violating
// that chain are repaired by the smallest multiplicative perturbation d of the
// next-ranked bids (a small QP).
//
// Best response: each bidder's average bid is assumed to maximize
// Q(b) v - TE(b), where Q and TE are the click rate and expenditure the bid
// would have earned against the logged opponents.

#ifndef ADREGRET_EQUILIBRIUM_H_
#define ADREGRET_EQUILIBRIUM_H_

#include <span>
#include <vector>

#include "adregret/auction.h"
#include "adregret/bid_sequence.h"
#include "adregret/estimators.h"

namespace adregret {

// Tolerance on the nonincreasing value chain, in coins.
inline constexpr double kChainTolerance = 1e-9;

// Per-position values of one auction; values[0] (the top slot) is +infinity
// until a top rule assigns it.
struct IccProfile {
  std::vector<double> values;

  bool ChainConsistent(double tolerance = kChainTolerance) const;
};

// Throws Error(kInvalidArgument) unless `sorted_bids` is nonincreasing.
IccProfile IccValues(std::span<const double> sorted_bids,
                     const CtrProfile& ctrs);

// ICC values with b_(k+1) scaled by d[k-1] in position k's formula, for
// 1 < k < n. `factors` holds d_1..d_n; d_1 and d_n are ignored.
IccProfile PerturbedIccValues(std::span<const double> sorted_bids,
                              const CtrProfile& ctrs,
                              std::span<const double> factors);

struct PerturbationResult {
  // d_1..d_n with d_1 = d_n = 1.
  std::vector<double> factors;
  // sum (d_i - 1)^2.
  double objective = 0.0;
  bool feasible = true;

  // (1/n) sum |d_i - 1|.
  double MeanAbsDeviation() const;
};

// argmin_d sum (d_i - 1)^2 over d_2..d_(n-1) subject to the perturbed values
// being nonincreasing from position 2 to position n. Solved exactly by
// enumerating active sets. `feasible` is false when no feasible point with
// all d_i > 0 exists.
PerturbationResult MinimalPerturbations(std::span<const double> sorted_bids,
                                        const CtrProfile& ctrs);

// How the unbounded top slot is valued.
enum class TopRule {
  kSecond,        // v_1 = v_2
  kMaxSecondOwn,  // v_1 = max(v_2, b_1)
};

// How per-auction values are averaged over time.
enum class NeAveraging {
  kByIdentity,  // follow each bidder through rank changes
  kByRank,      // average by slot; record k describes position k + 1
};

struct VcgNeOptions {
  bool perturb = true;
  TopRule top_rule = TopRule::kSecond;
  NeAveraging averaging = NeAveraging::kByIdentity;
};

struct AuctionDeviation {
  int auction = 0;
  double mean_abs_deviation = 0.0;
  bool consistent = true;  // raw ICC already satisfied the chain
  bool excluded = false;   // perturbation infeasible; left out of averages
};

struct VcgNeResult {
  std::vector<EstimateRecord> estimates;
  std::vector<AuctionDeviation> deviations;
  int consistent_auctions = 0;
  int excluded_auctions = 0;

  double ConsistencyRate() const;
};

VcgNeResult EstimateVcgLikeNe(const BidSequence& seq, const CtrProfile& ctrs,
                              const Window& window,
                              const VcgNeOptions& options = {});

// Expected click rate and per-auction expenditure of every grid bid against
// the logged opponents, averaged over a window.
struct ResponseCurves {
  int bidder = 0;
  Window window;
  std::vector<double> bids;
  std::vector<double> q;
  std::vector<double> te;

  int size() const { return static_cast<int>(bids.size()); }
};

ResponseCurves ComputeResponseCurves(const BidSequence& seq, int bidder,
                                     const Grid& bids, const Window& window,
                                     const AuctionRules& rules);

// argmax_b Q(b) v - TE(b), ties within kTieTolerance kept, ascending.
std::vector<double> BestResponseSet(const ResponseCurves& curves, double value);

struct BestResponseVariant {
  enum class Span { kWindow, kFullGame };
  enum class BidStat { kMean, kMeanExcludingOutliers };
  enum class Solver { kGrid, kFoc };
  enum class Aggregation { kPooled, kPerAuction };

  Span span = Span::kWindow;
  BidStat bid_stat = BidStat::kMean;
  Solver solver = Solver::kGrid;
  Aggregation aggregation = Aggregation::kPooled;
};

// The variant behind each best-response method name.
BestResponseVariant VariantFor(Method method);

// Mean of `bids` after dropping entries more than two population standard
// deviations from the mean. `removed` receives the number dropped.
double MeanExcludingOutliers(std::span<const double> bids, int* removed);

// Best-response inversion for one bidder. `window` is the analysis window
// (ignored by the full-game variant). `method` labels the record and must be
// one of the best-response methods.
EstimateRecord EstimateBestResponse(const BidSequence& seq, int bidder,
                                    const AuctionRules& rules,
                                    const Window& window, Method method,
                                    const Grid& valuations = Grid::Default(),
                                    const Grid& bids = Grid::Default());

}  // namespace adregret

#endif  // ADREGRET_EQUILIBRIUM_H_
