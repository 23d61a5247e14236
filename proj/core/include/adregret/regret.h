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

// Hindsight regret of a bidder against the best fixed bid on a grid.
//
//   Actual(v) = sum_t U(b_i^t, b_-i^t | v)
//   Opt(v)    = max_{b in B} sum_t U(b, b_-i^t | v)
//   Regret(v) = Opt(v) - Actual(v)
//
// All sums run over the auctions of a window in increasing time order, so
// results are bit-stable across entry points.

#ifndef ADREGRET_REGRET_H_
#define ADREGRET_REGRET_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adregret/auction.h"
#include "adregret/bid_sequence.h"

namespace adregret {

// Two fixed bids are both optimal when their summed utilities differ by no
// more than this many coins.
inline constexpr double kTieTolerance = 1e-9;

// How Opt is searched. kTruthfulShortcut evaluates only b = v for VCG when v
// lies on the bid grid and falls back to the scan otherwise.
enum class OptSearch { kGridScan, kTruthfulShortcut };

// Counterfactual replay of one bidder over a window: the slot and payment of
// the logged bid and of every grid bid in every auction. Utilities are linear
// in the valuation, so one table serves every candidate value.
class ReplayTable {
 public:
  ReplayTable(const BidSequence& seq, int bidder, const Window& window,
              const AuctionRules& rules, const Grid& bids);

  int bidder() const { return bidder_; }
  const Window& window() const { return window_; }
  const Grid& grid() const { return grid_; }
  const AuctionRules& rules() const { return rules_; }
  int auctions() const { return window_.size(); }

  // `offset` counts auctions from the start of the window.
  const SlotResult& logged(int offset) const { return logged_[offset]; }
  const SlotResult& fixed(int offset, int bid_index) const {
    return fixed_[static_cast<std::size_t>(offset) * grid_.size() + bid_index];
  }

  // Sums over offsets [begin, end); the whole window by default.
  double ActualUtility(double value) const;
  double ActualUtility(double value, int begin, int end) const;
  double FixedBidUtility(int bid_index, double value) const;
  double FixedBidUtility(int bid_index, double value, int begin,
                         int end) const;

 private:
  int bidder_;
  Window window_;
  AuctionRules rules_;
  Grid grid_;
  std::vector<SlotResult> logged_;
  std::vector<SlotResult> fixed_;
};

struct FixedBidOptimum {
  double utility = 0.0;
  // Every grid bid within kTieTolerance of the maximum, ascending.
  std::vector<double> bids;
};

struct RegretReport {
  double actual = 0.0;
  double opt = 0.0;
  double regret = 0.0;
  // regret / opt; absent when opt <= 0.
  std::optional<double> relative;
  std::vector<double> opt_bids;
};

// One entry per candidate valuation, in grid order.
struct RegretCurve {
  int bidder = 0;
  Window window;
  std::vector<double> values;
  std::vector<RegretReport> reports;

  int size() const { return static_cast<int>(values.size()); }
};

// Opt over offsets [begin, end) of a replay table.
FixedBidOptimum OptimalFixedUtility(const ReplayTable& table, double value,
                                    int begin, int end,
                                    OptSearch search = OptSearch::kGridScan);
RegretReport RegretFromTable(const ReplayTable& table, double value, int begin,
                             int end, OptSearch search = OptSearch::kGridScan);

double ActualUtility(const BidSequence& seq, int bidder, double value,
                     const Window& window, const AuctionRules& rules);

FixedBidOptimum OptimalFixedUtility(const BidSequence& seq, int bidder,
                                    double value, const Window& window,
                                    const AuctionRules& rules,
                                    const Grid& bids = Grid::Default(),
                                    OptSearch search = OptSearch::kGridScan);

RegretReport Regret(const BidSequence& seq, int bidder, double value,
                    const Window& window, const AuctionRules& rules,
                    const Grid& bids = Grid::Default(),
                    OptSearch search = OptSearch::kGridScan);

RegretCurve ComputeRegretCurve(const BidSequence& seq, int bidder,
                               const Grid& valuations, const Grid& bids,
                               const Window& window, const AuctionRules& rules,
                               OptSearch search = OptSearch::kGridScan);

struct GroupRegret {
  double regret = 0.0;
  double opt = 0.0;
  // sum regret / sum opt; absent when sum opt <= 0.
  std::optional<double> relative;
};

// Additive regret of a set of bidders. `values` is indexed by bidder and must
// cover every member.
GroupRegret GroupRelativeRegret(const BidSequence& seq,
                                std::span<const int> members,
                                std::span<const double> values,
                                const Window& window, const AuctionRules& rules,
                                const Grid& bids = Grid::Default());

struct BidderGroup {
  std::string label;
  std::vector<int> members;
};

// "all" plus one "type=<v>" group per distinct valuation, ascending.
std::vector<BidderGroup> GroupsByType(std::span<const double> values);

struct MomentaryBlock {
  int index = 0;  // 1-based block number
  Window window;
  bool partial = false;  // shorter than the requested block length
  std::string group;
  GroupRegret regret;
};

// Regret recomputed independently inside consecutive blocks of `block_len`
// auctions covering 1..T. The last block may be short and is flagged. Blocks
// are listed in time order, groups in the order given, block-major.
std::vector<MomentaryBlock> MomentaryRegretSeries(
    const BidSequence& seq, std::span<const double> values,
    std::span<const BidderGroup> groups, int block_len,
    const AuctionRules& rules, const Grid& bids = Grid::Default());

}  // namespace adregret

#endif  // ADREGRET_REGRET_H_
