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

#include "adregret/regret.h"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <sstream>

#include "adregret/error.h"

namespace adregret {

ReplayTable::ReplayTable(const BidSequence& seq, int bidder,
                         const Window& window, const AuctionRules& rules,
                         const Grid& bids)
    : bidder_(bidder), window_(window), rules_(rules), grid_(bids) {
  seq.CheckBidder(bidder);
  seq.CheckWindow(window);
  logged_.reserve(window.size());
  fixed_.reserve(static_cast<std::size_t>(window.size()) * bids.size());
  for (int t = window.first; t <= window.last; ++t) {
    const OpponentField field(seq.profile(t), bidder);
    logged_.push_back(field.Place(seq.bid(t, bidder), rules_));
    for (double b : grid_.points()) fixed_.push_back(field.Place(b, rules_));
  }
}

double ReplayTable::ActualUtility(double value) const {
  return ActualUtility(value, 0, auctions());
}

double ReplayTable::ActualUtility(double value, int begin, int end) const {
  double total = 0.0;
  for (int s = begin; s < end; ++s) total += logged_[s].Utility(value);
  return total;
}

double ReplayTable::FixedBidUtility(int bid_index, double value) const {
  return FixedBidUtility(bid_index, value, 0, auctions());
}

double ReplayTable::FixedBidUtility(int bid_index, double value, int begin,
                                    int end) const {
  double total = 0.0;
  for (int s = begin; s < end; ++s) total += fixed(s, bid_index).Utility(value);
  return total;
}

FixedBidOptimum OptimalFixedUtility(const ReplayTable& table, double value,
                                    int begin, int end, OptSearch search) {
  const Grid& grid = table.grid();
  if (search == OptSearch::kTruthfulShortcut &&
      table.rules().mechanism == Mechanism::kVcg) {
    const int k = grid.IndexOf(value);
    if (k >= 0) {
      return {table.FixedBidUtility(k, value, begin, end), {value}};
    }
  }
  std::vector<double> totals(grid.size());
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid.size(); ++k) {
    totals[k] = table.FixedBidUtility(k, value, begin, end);
    best = std::max(best, totals[k]);
  }
  FixedBidOptimum optimum{best, {}};
  for (int k = 0; k < grid.size(); ++k) {
    if (totals[k] >= best - kTieTolerance) optimum.bids.push_back(grid[k]);
  }
  return optimum;
}

RegretReport RegretFromTable(const ReplayTable& table, double value, int begin,
                             int end, OptSearch search) {
  FixedBidOptimum optimum =
      OptimalFixedUtility(table, value, begin, end, search);
  RegretReport report;
  report.actual = table.ActualUtility(value, begin, end);
  report.opt = optimum.utility;
  report.regret = report.opt - report.actual;
  if (report.opt > 0.0) report.relative = report.regret / report.opt;
  report.opt_bids = std::move(optimum.bids);
  return report;
}

double ActualUtility(const BidSequence& seq, int bidder, double value,
                     const Window& window, const AuctionRules& rules) {
  seq.CheckBidder(bidder);
  seq.CheckWindow(window);
  double total = 0.0;
  for (int t = window.first; t <= window.last; ++t) {
    total += OpponentField(seq.profile(t), bidder)
                 .Place(seq.bid(t, bidder), rules)
                 .Utility(value);
  }
  return total;
}

FixedBidOptimum OptimalFixedUtility(const BidSequence& seq, int bidder,
                                    double value, const Window& window,
                                    const AuctionRules& rules, const Grid& bids,
                                    OptSearch search) {
  const ReplayTable table(seq, bidder, window, rules, bids);
  return OptimalFixedUtility(table, value, 0, table.auctions(), search);
}

RegretReport Regret(const BidSequence& seq, int bidder, double value,
                    const Window& window, const AuctionRules& rules,
                    const Grid& bids, OptSearch search) {
  const ReplayTable table(seq, bidder, window, rules, bids);
  return RegretFromTable(table, value, 0, table.auctions(), search);
}

RegretCurve ComputeRegretCurve(const BidSequence& seq, int bidder,
                               const Grid& valuations, const Grid& bids,
                               const Window& window, const AuctionRules& rules,
                               OptSearch search) {
  const ReplayTable table(seq, bidder, window, rules, bids);
  RegretCurve curve;
  curve.bidder = bidder;
  curve.window = window;
  curve.values.assign(valuations.points().begin(), valuations.points().end());
  curve.reports.reserve(valuations.size());
  for (double v : curve.values) {
    curve.reports.push_back(
        RegretFromTable(table, v, 0, table.auctions(), search));
  }
  return curve;
}

namespace {

void CheckValues(const BidSequence& seq, std::span<const double> values) {
  if (static_cast<int>(values.size()) != seq.bidders()) {
    throw Error(ErrorCode::kLengthMismatch,
                "need one value per bidder: got " +
                    std::to_string(values.size()) + " for " +
                    std::to_string(seq.bidders()) + " bidders");
  }
}

GroupRegret Aggregate(double regret, double opt) {
  GroupRegret g{regret, opt, std::nullopt};
  if (opt > 0.0) g.relative = regret / opt;
  return g;
}

}  // namespace

GroupRegret GroupRelativeRegret(const BidSequence& seq,
                                std::span<const int> members,
                                std::span<const double> values,
                                const Window& window, const AuctionRules& rules,
                                const Grid& bids) {
  CheckValues(seq, values);
  if (members.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "bidder group is empty");
  }
  double regret = 0.0;
  double opt = 0.0;
  for (int i : members) {
    const RegretReport r = Regret(seq, i, values[i], window, rules, bids);
    regret += r.regret;
    opt += r.opt;
  }
  return Aggregate(regret, opt);
}

std::vector<BidderGroup> GroupsByType(std::span<const double> values) {
  std::vector<BidderGroup> groups;
  BidderGroup all{"all", {}};
  std::map<double, std::vector<int>> by_value;
  for (int i = 0; i < static_cast<int>(values.size()); ++i) {
    all.members.push_back(i);
    by_value[values[i]].push_back(i);
  }
  groups.push_back(std::move(all));
  for (auto& [v, members] : by_value) {
    std::ostringstream label;
    label << "type=" << v;
    groups.push_back({label.str(), std::move(members)});
  }
  return groups;
}

std::vector<MomentaryBlock> MomentaryRegretSeries(
    const BidSequence& seq, std::span<const double> values,
    std::span<const BidderGroup> groups, int block_len,
    const AuctionRules& rules, const Grid& bids) {
  CheckValues(seq, values);
  if (block_len < 1) {
    throw Error(ErrorCode::kInvalidArgument, "block length must be >= 1");
  }
  const int auctions = seq.auctions();
  const Window full = Window::Full(auctions);
  std::vector<std::unique_ptr<ReplayTable>> tables(seq.bidders());
  for (const BidderGroup& g : groups) {
    if (g.members.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "bidder group '" + g.label + "' is empty");
    }
    for (int i : g.members) {
      seq.CheckBidder(i);
      if (!tables[i]) {
        tables[i] = std::make_unique<ReplayTable>(seq, i, full, rules, bids);
      }
    }
  }

  std::vector<MomentaryBlock> series;
  int index = 1;
  for (int begin = 0; begin < auctions; begin += block_len, ++index) {
    const int end = std::min(auctions, begin + block_len);
    for (const BidderGroup& g : groups) {
      double regret = 0.0;
      double opt = 0.0;
      for (int i : g.members) {
        const RegretReport r =
            RegretFromTable(*tables[i], values[i], begin, end);
        regret += r.regret;
        opt += r.opt;
      }
      MomentaryBlock block;
      block.index = index;
      block.window = {begin + 1, end};
      block.partial = end - begin < block_len;
      block.group = g.label;
      block.regret = Aggregate(regret, opt);
      series.push_back(std::move(block));
    }
  }
  return series;
}

}  // namespace adregret
