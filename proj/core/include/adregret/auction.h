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

// Mechanics of a single position auction: n bidders compete for n slots with
// commonly known click-through rates. Slot k (1 = top) yields alpha_k * v to a
// bidder with per-click value v; the payment depends on the mechanism.
//
// Bidders are identified by their 0-based index into a bid profile. Ties in
// bid are broken by ascending index, so the lower index gets the better slot.

#ifndef ADREGRET_AUCTION_H_
#define ADREGRET_AUCTION_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace adregret {

enum class Mechanism { kGsp, kVcg };

std::string_view MechanismName(Mechanism mechanism);
// Accepts "gsp" / "vcg" in any case. Throws Error(kInvalidArgument).
Mechanism ParseMechanism(std::string_view name);

// Click-through rates listed top-down: rate(1) is the best slot. Rates must be
// strictly decreasing and lie in (0, 1].
class CtrProfile {
 public:
  explicit CtrProfile(std::vector<double> top_down_rates);

  // (0.38, 0.29, 0.20, 0.11, 0.02).
  static CtrProfile Default();

  int size() const { return static_cast<int>(rates_.size()); }
  // 1-based position.
  double rate(int position) const { return rates_[position - 1]; }
  std::span<const double> rates() const { return rates_; }

  bool operator==(const CtrProfile&) const = default;

 private:
  std::vector<double> rates_;
};

// Everything needed to price a bid profile.
struct AuctionRules {
  Mechanism mechanism = Mechanism::kGsp;
  CtrProfile ctrs = CtrProfile::Default();
};

// Validates a profile: every bid finite and nonnegative. Throws otherwise.
void ValidateBids(std::span<const double> bids);

// positions[i] is the 1-based slot won by bidder i.
std::vector<int> Allocate(std::span<const double> bids);

// Bidder indices ordered from the top slot down.
std::vector<int> RankOrder(std::span<const double> bids);

// Expenditure (coins per auction) of each position given bids sorted in
// decreasing order. GSP: alpha_k * b_(k+1). VCG: sum over j > k of
// b_(j) * (alpha_(j-1) - alpha_j). The last position pays 0 under both.
std::vector<double> PositionPayments(Mechanism mechanism,
                                     std::span<const double> ranked_bids,
                                     const CtrProfile& ctrs);

// Slot, click-through rate and payment of a single bidder.
struct SlotResult {
  int position = 0;
  double ctr = 0.0;
  double payment = 0.0;

  double Utility(double value) const { return ctr * value - payment; }
};

// The opponents of one bidder in one auction, pre-sorted so that many
// alternative bids can be priced without re-sorting. The bidder keeps its own
// index for tie-breaking.
class OpponentField {
 public:
  OpponentField(std::span<const double> profile, int bidder);

  // Outcome of `bid` inserted among the fixed opponents.
  SlotResult Place(double bid, const AuctionRules& rules) const;

  int bidder() const { return bidder_; }

 private:
  int bidder_;
  // Opponent bids in ranking order and their bidder indices.
  std::vector<double> bids_;
  std::vector<int> ids_;
};

// U_i(b, b_-i | v): utility of `bidder` if it had bid `bid` while everyone
// else kept their bids in `profile`. The bidder's own entry in `profile` is
// ignored.
double CounterfactualUtility(const AuctionRules& rules, double bid, int bidder,
                             std::span<const double> profile, double value);

struct AuctionOutcome {
  std::vector<int> positions;
  std::vector<double> expenditures;
  // Empty when no values were supplied.
  std::vector<double> utilities;
  // sum_i alpha_pos(i) * v_i; zero when no values were supplied.
  double welfare = 0.0;
};

// Allocation and payments for a full profile. `values` may be empty; otherwise
// its length must match the profile.
AuctionOutcome Resolve(const AuctionRules& rules, std::span<const double> bids,
                       std::span<const double> values = {});

// Welfare of an explicit allocation: sum_i alpha_{positions[i]} * values[i].
double Welfare(const CtrProfile& ctrs, std::span<const int> positions,
               std::span<const double> values);

}  // namespace adregret

#endif  // ADREGRET_AUCTION_H_
