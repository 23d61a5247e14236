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
#include <limits>

#include "adregret/equilibrium.h"

namespace adregret {

double VcgNeResult::ConsistencyRate() const {
  if (deviations.empty()) return 0.0;
  return static_cast<double>(consistent_auctions) /
         static_cast<double>(deviations.size());
}

VcgNeResult EstimateVcgLikeNe(const BidSequence& seq, const CtrProfile& ctrs,
                              const Window& window,
                              const VcgNeOptions& options) {
  seq.CheckWindow(window);
  const int n = seq.bidders();
  std::vector<double> sums(n, 0.0);
  std::vector<int> counts(n, 0);
  std::vector<double> sorted(n);

  VcgNeResult result;
  result.deviations.reserve(window.size());
  for (int t = window.first; t <= window.last; ++t) {
    const auto profile = seq.profile(t);
    const std::vector<int> order = RankOrder(profile);
    for (int k = 0; k < n; ++k) sorted[k] = profile[order[k]];

    AuctionDeviation dev;
    dev.auction = t;
    IccProfile icc = IccValues(sorted, ctrs);
    dev.consistent = icc.ChainConsistent();
    if (dev.consistent) ++result.consistent_auctions;
    if (!dev.consistent && options.perturb) {
      const PerturbationResult fix = MinimalPerturbations(sorted, ctrs);
      if (!fix.feasible) {
        dev.excluded = true;
        ++result.excluded_auctions;
        result.deviations.push_back(dev);
        continue;
      }
      icc = PerturbedIccValues(sorted, ctrs, fix.factors);
      dev.mean_abs_deviation = fix.MeanAbsDeviation();
    }
    icc.values[0] = options.top_rule == TopRule::kSecond
                        ? icc.values[1]
                        : std::max(icc.values[1], sorted[0]);
    result.deviations.push_back(dev);

    for (int k = 0; k < n; ++k) {
      const int slot = options.averaging == NeAveraging::kByIdentity ? order[k] : k;
      sums[slot] += icc.values[k];
      ++counts[slot];
    }
  }

  const Method method = options.perturb ? Method::kVcgNe : Method::kVcgNeRaw;
  for (int i = 0; i < n; ++i) {
    EstimateRecord r;
    r.bidder = i;
    r.method = method;
    r.label = std::string(MethodName(method));
    r.window = window;
    r.bid_count = counts[i];
    r.estimate = counts[i] > 0 ? sums[i] / counts[i]
                               : std::numeric_limits<double>::quiet_NaN();
    if (result.excluded_auctions > 0) r.AddFlag(flags::kExcludedAuctions);
    if (options.averaging == NeAveraging::kByRank) r.AddFlag("by_rank");
    result.estimates.push_back(std::move(r));
  }
  return result;
}

}  // namespace adregret
