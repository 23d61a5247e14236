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
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "adregret/bidder_sim.h"
#include "adregret/equilibrium.h"
#include "adregret/estimators.h"
#include "adregret/regret.h"

namespace adregret {
namespace {

BidSequence RandomLog(int auctions, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 60.0);
  std::vector<std::vector<double>> rows(auctions, std::vector<double>(5));
  for (auto& r : rows) {
    for (double& x : r) x = u(rng);
  }
  return BidSequence(rows);
}

void BM_RegretCurve(benchmark::State& state) {
  const BidSequence seq = RandomLog(static_cast<int>(state.range(0)), 1);
  const Window w = Window::SecondHalf(seq.auctions());
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeRegretCurve(seq, 2, Grid::Default(),
                                                Grid::Default(), w, AuctionRules{}));
  }
  state.SetItemsProcessed(state.iterations() * (w.last - w.first + 1));
}
BENCHMARK(BM_RegretCurve)->Arg(100)->Arg(1500);

void BM_PerturbationQp(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(1.0, 60.0);
  std::vector<std::vector<double>> profiles(256, std::vector<double>(5));
  for (auto& p : profiles) {
    for (double& x : p) x = u(rng);
    std::sort(p.rbegin(), p.rend());
  }
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        MinimalPerturbations(profiles[k++ % profiles.size()], CtrProfile::Default()));
  }
}
BENCHMARK(BM_PerturbationQp);

void BM_HedgeSession(benchmark::State& state) {
  SessionConfig cfg = DefaultSession(Mechanism::kGsp, Hedge{}, 3);
  cfg.rounds = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(RunSession(cfg));
}
BENCHMARK(BM_HedgeSession)->Arg(1500)->Unit(benchmark::kMillisecond);

void BM_BestResponseEstimate(benchmark::State& state) {
  const BidSequence seq = RandomLog(1500, 4);
  const Method m = state.range(0) == 0 ? Method::kBestResponse : Method::kBrFoc;
  for (auto _ : state) {
    benchmark::DoNotOptimize(EstimateBestResponse(seq, 1, AuctionRules{},
                                                  Window::SecondHalf(1500), m));
  }
}
BENCHMARK(BM_BestResponseEstimate)->Arg(0)->Arg(1);

}  // namespace
}  // namespace adregret

BENCHMARK_MAIN();
