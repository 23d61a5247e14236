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

#include "adregret/auction.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

#include "adregret/error.h"

namespace adregret {

std::string_view MechanismName(Mechanism mechanism) {
  return mechanism == Mechanism::kGsp ? "gsp" : "vcg";
}

Mechanism ParseMechanism(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "gsp") return Mechanism::kGsp;
  if (lower == "vcg") return Mechanism::kVcg;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown mechanism '" + std::string(name) + "'");
}

CtrProfile::CtrProfile(std::vector<double> top_down_rates)
    : rates_(std::move(top_down_rates)) {
  if (rates_.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two CTR positions");
  }
  for (std::size_t k = 0; k < rates_.size(); ++k) {
    if (!(rates_[k] > 0.0 && rates_[k] <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "CTR outside (0, 1]");
    }
    if (k > 0 && !(rates_[k - 1] > rates_[k])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "CTRs must be strictly decreasing top-down");
    }
  }
}

CtrProfile CtrProfile::Default() {
  return CtrProfile({0.38, 0.29, 0.20, 0.11, 0.02});
}

void ValidateBids(std::span<const double> bids) {
  for (double b : bids) {
    if (!std::isfinite(b) || b < 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "bids must be finite and nonnegative");
    }
  }
}

std::vector<int> RankOrder(std::span<const double> bids) {
  std::vector<int> order(bids.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return bids[a] > bids[b]; });
  return order;
}

std::vector<int> Allocate(std::span<const double> bids) {
  const std::vector<int> order = RankOrder(bids);
  std::vector<int> positions(bids.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    positions[order[k]] = static_cast<int>(k) + 1;
  }
  return positions;
}

namespace {

// Payment of the bidder at `position` when the bids ranked below it are
// below[0], below[1], ... (below[0] sits at position + 1). Shared by every
// pricing path so that all of them round identically.
double PaymentAt(Mechanism mechanism, const CtrProfile& ctrs, int position,
                 std::span<const double> below) {
  if (below.empty()) return 0.0;
  if (mechanism == Mechanism::kGsp) {
    return ctrs.rate(position) * below[0];
  }
  double payment = 0.0;
  for (std::size_t m = 0; m < below.size(); ++m) {
    const int j = position + 1 + static_cast<int>(m);
    payment += below[m] * (ctrs.rate(j - 1) - ctrs.rate(j));
  }
  return payment;
}

void CheckSlots(const CtrProfile& ctrs, std::size_t bidders) {
  if (static_cast<int>(bidders) != ctrs.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "bid profile has " + std::to_string(bidders) +
                    " bidders but the CTR profile has " +
                    std::to_string(ctrs.size()) + " slots");
  }
}

}  // namespace

std::vector<double> PositionPayments(Mechanism mechanism,
                                     std::span<const double> ranked_bids,
                                     const CtrProfile& ctrs) {
  CheckSlots(ctrs, ranked_bids.size());
  std::vector<double> payments(ranked_bids.size());
  for (std::size_t k = 0; k < ranked_bids.size(); ++k) {
    payments[k] = PaymentAt(mechanism, ctrs, static_cast<int>(k) + 1,
                            ranked_bids.subspan(k + 1));
  }
  return payments;
}

OpponentField::OpponentField(std::span<const double> profile, int bidder)
    : bidder_(bidder) {
  if (bidder < 0 || bidder >= static_cast<int>(profile.size())) {
    throw Error(ErrorCode::kOutOfRange, "bidder index out of range");
  }
  for (int id : RankOrder(profile)) {
    if (id == bidder) continue;
    ids_.push_back(id);
    bids_.push_back(profile[id]);
  }
}

SlotResult OpponentField::Place(double bid, const AuctionRules& rules) const {
  CheckSlots(rules.ctrs, bids_.size() + 1);
  std::size_t above = 0;
  while (above < bids_.size() &&
         (bids_[above] > bid || (bids_[above] == bid && ids_[above] < bidder_))) {
    ++above;
  }
  SlotResult result;
  result.position = static_cast<int>(above) + 1;
  result.ctr = rules.ctrs.rate(result.position);
  result.payment =
      PaymentAt(rules.mechanism, rules.ctrs, result.position,
                std::span<const double>(bids_).subspan(above));
  return result;
}

double CounterfactualUtility(const AuctionRules& rules, double bid, int bidder,
                             std::span<const double> profile, double value) {
  return OpponentField(profile, bidder).Place(bid, rules).Utility(value);
}

AuctionOutcome Resolve(const AuctionRules& rules, std::span<const double> bids,
                       std::span<const double> values) {
  CheckSlots(rules.ctrs, bids.size());
  if (!values.empty() && values.size() != bids.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "values and bid profile differ in length");
  }
  const std::vector<int> order = RankOrder(bids);
  std::vector<double> ranked(bids.size());
  for (std::size_t k = 0; k < order.size(); ++k) ranked[k] = bids[order[k]];
  const std::vector<double> by_position =
      PositionPayments(rules.mechanism, ranked, rules.ctrs);

  AuctionOutcome outcome;
  outcome.positions.resize(bids.size());
  outcome.expenditures.resize(bids.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    outcome.positions[order[k]] = static_cast<int>(k) + 1;
    outcome.expenditures[order[k]] = by_position[k];
  }
  if (!values.empty()) {
    outcome.utilities.resize(bids.size());
    for (std::size_t i = 0; i < bids.size(); ++i) {
      const SlotResult slot{outcome.positions[i],
                            rules.ctrs.rate(outcome.positions[i]),
                            outcome.expenditures[i]};
      outcome.utilities[i] = slot.Utility(values[i]);
    }
    outcome.welfare = Welfare(rules.ctrs, outcome.positions, values);
  }
  return outcome;
}

double Welfare(const CtrProfile& ctrs, std::span<const int> positions,
               std::span<const double> values) {
  if (positions.size() != values.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "positions and values differ in length");
  }
  double welfare = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    welfare += ctrs.rate(positions[i]) * values[i];
  }
  return welfare;
}

}  // namespace adregret
