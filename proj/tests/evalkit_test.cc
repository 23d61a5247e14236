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

#include "adregret/evalkit.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "adregret/error.h"
#include "oracles.h"

namespace adregret {
namespace {

const std::vector<double> kAlpha = {0.38, 0.29, 0.20, 0.11, 0.02};
const std::vector<double> kValues = {21, 27, 33, 39, 45};

TEST(RelativeErrorTest, Examples) {
  EXPECT_NEAR(RelativeError(45, 40.5), 0.10, 1e-12);
  EXPECT_EQ(RelativeError(33, 33), 0.0);
  EXPECT_NEAR(RelativeError(21, 28.77), 0.37, 1e-12);
  EXPECT_THROW(RelativeError(0, 1), Error);
  EXPECT_THROW(RelativeError(-3, 1), Error);
}

TEST(RmsErrorTest, Examples) {
  const std::vector<double> e = {0.3, 0.4};
  EXPECT_NEAR(RmsError(e), std::sqrt(0.125), 1e-15);
  EXPECT_EQ(RmsError(std::vector<double>{0.0}), 0.0);
  EXPECT_DOUBLE_EQ(RmsError(std::vector<double>(7, 0.25)), 0.25);
  EXPECT_THROW(RmsError(std::vector<double>{}), Error);
}

TEST(PropertyTest, RmsPermutationAndScale) {
  std::mt19937_64 rng(60);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> e(1 + trial % 9);
    for (double& x : e) x = u(rng);
    const double base = RmsError(e);
    std::shuffle(e.begin(), e.end(), rng);
    EXPECT_NEAR(RmsError(e), base, 1e-12);
    for (double& x : e) x *= 3.0;
    EXPECT_NEAR(RmsError(e), 3.0 * base, 1e-12);
  }
}

// Bidder 0 bids `own` against fixed opponents 50, 40, 30, 20.
BidSequence PositionLog(const std::vector<double>& own) {
  std::vector<std::vector<double>> rows;
  for (double b : own) rows.push_back({b, 50, 40, 30, 20});
  return BidSequence(rows);
}

TEST(ModalPositionTest, Majority) {
  std::vector<double> own(750, 45.0);
  std::fill(own.begin(), own.begin() + 400, 35.0);
  const ModalPosition m = ModalPositionOf(PositionLog(own), 0, {1, 750});
  EXPECT_EQ(m.rank, 3);
  EXPECT_FALSE(m.tied);
}

TEST(ModalPositionTest, ConstantLog) {
  const ModalPosition m =
      ModalPositionOf(PositionLog(std::vector<double>(20, 25.0)), 0, {1, 20});
  EXPECT_EQ(m.rank, 4);
  EXPECT_FALSE(m.tied);
}

TEST(ModalPositionTest, TieTakesBetterRank) {
  std::vector<double> own(750, 35.0);
  std::fill(own.begin(), own.begin() + 375, 45.0);
  const ModalPosition m = ModalPositionOf(PositionLog(own), 0, {1, 750});
  EXPECT_EQ(m.rank, 2);
  EXPECT_TRUE(m.tied);
  const auto all = ModalPositions(PositionLog(own), {1, 750});
  ASSERT_EQ(all.size(), 5u);
  EXPECT_EQ(all[1].rank, 1);
}

TEST(ModalPositionTest, WindowRestricts) {
  std::vector<double> own(20, 35.0);
  std::fill(own.begin() + 10, own.end(), 60.0);
  EXPECT_EQ(ModalPositionOf(PositionLog(own), 0, {11, 20}).rank, 1);
  EXPECT_THROW(ModalPositionOf(PositionLog(own), 0, {15, 21}), Error);
}

TEST(BiasFactorsTest, Examples) {
  const std::vector<double> est = {28.77};
  const std::vector<double> val = {21};
  const std::vector<int> rank = {5};
  const BiasTable t = BiasFactors(est, val, rank);
  EXPECT_NEAR(*t.Factor(5), 1.37, 1e-12);
  EXPECT_FALSE(t.Factor(1).has_value());

  const std::vector<double> est2 = {33, 52};
  const std::vector<double> val2 = {30, 40};
  const std::vector<int> rank2 = {4, 4};
  EXPECT_NEAR(*BiasFactors(est2, val2, rank2).Factor(4), 1.2, 1e-12);

  const std::vector<int> ranks5 = {1, 2, 3, 4, 5};
  for (const auto& [r, f] : BiasFactors(kValues, kValues, ranks5).factors) {
    EXPECT_EQ(f, 1.0) << r;
  }
}

TEST(BiasFactorsTest, Errors) {
  const std::vector<double> est = {1, 2};
  const std::vector<double> val = {1};
  const std::vector<int> rank = {1, 2};
  EXPECT_THROW(BiasFactors(est, val, rank), Error);
  const std::vector<double> val0 = {1, 0};
  EXPECT_THROW(BiasFactors(est, val0, rank), Error);
}

TEST(UnbiasTest, Examples) {
  EXPECT_NEAR(Unbias(28.77, 1.37), 21.0, 1e-12);
  EXPECT_EQ(Unbias(33.5, 1.0), 33.5);
  EXPECT_EQ(Unbias(0.0, 2.0), 0.0);
  EXPECT_THROW(Unbias(10, 0), Error);
  EXPECT_THROW(Unbias(10, -1), Error);
}

TEST(PropertyTest, SingletonRankUnbiasIsExact) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(5.0, 80.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> est(5), val(5);
    for (int i = 0; i < 5; ++i) {
      est[i] = u(rng);
      val[i] = u(rng);
    }
    const std::vector<int> ranks = {3, 1, 5, 2, 4};
    const BiasTable t = BiasFactors(est, val, ranks);
    for (int i = 0; i < 5; ++i) {
      EXPECT_NEAR(Unbias(est[i], *t.Factor(ranks[i])), val[i], 1e-12 * val[i]);
    }
  }
}

TEST(WelfareTest, BestAndWorst) {
  const CtrProfile ctrs = CtrProfile::Default();
  EXPECT_NEAR(BestWelfare(ctrs, kValues), 38.4, 1e-12);
  EXPECT_NEAR(WorstWelfare(ctrs, kValues), 27.6, 1e-12);
}

TEST(WelfareTest, SortedAndReversed) {
  // Bids equal values: efficient allocation.
  const BidSequence sorted(std::vector<std::vector<double>>(10, kValues));
  const auto s = WelfareSeries(sorted, kValues, 4, AuctionRules{});
  ASSERT_EQ(s.size(), 3u);
  for (const auto& b : s) EXPECT_NEAR(b.normalized, 1.0, 1e-12);
  EXPECT_FALSE(s[1].partial);
  EXPECT_TRUE(s[2].partial);
  EXPECT_EQ(s[2].window, (Window{9, 10}));

  std::vector<double> reversed(kValues.rbegin(), kValues.rend());
  const BidSequence rev(std::vector<std::vector<double>>(10, reversed));
  for (const auto& b : WelfareSeries(rev, kValues, 5, AuctionRules{})) {
    EXPECT_NEAR(b.normalized, 0.0, 1e-12);
  }
}

TEST(WelfareTest, AllPermutationsAverageHalf) {
  // One auction per allocation: bidder i bids 60 - 10 * slot(i).
  std::vector<int> pos = {0, 1, 2, 3, 4};
  std::vector<std::vector<double>> rows;
  do {
    std::vector<double> row(5);
    for (int i = 0; i < 5; ++i) row[i] = 60.0 - 10.0 * pos[i];
    rows.push_back(row);
  } while (std::next_permutation(pos.begin(), pos.end()));
  ASSERT_EQ(rows.size(), 120u);
  const auto s = WelfareSeries(BidSequence(rows), kValues, 120, AuctionRules{});
  ASSERT_EQ(s.size(), 1u);
  EXPECT_NEAR(s[0].normalized, 0.5, 1e-12);

  const auto all = oracle::AllPermutationWelfare(kAlpha, kValues);
  const double mean = std::accumulate(all.begin(), all.end(), 0.0) / all.size();
  const double best = *std::max_element(all.begin(), all.end());
  const double worst = *std::min_element(all.begin(), all.end());
  EXPECT_NEAR((mean - worst) / (best - worst), s[0].normalized, 1e-12);
  EXPECT_NEAR(best, BestWelfare(CtrProfile::Default(), kValues), 1e-12);
  EXPECT_NEAR(worst, WorstWelfare(CtrProfile::Default(), kValues), 1e-12);
}

TEST(WelfareTest, EqualValuesAbsent) {
  const std::vector<double> same(5, 30.0);
  const BidSequence seq(std::vector<std::vector<double>>(5, kValues));
  EXPECT_TRUE(WelfareSeries(seq, same, 2, AuctionRules{}).empty());
  EXPECT_THROW(WelfareSeries(seq, std::vector<double>{1, 2}, 2, AuctionRules{}),
               Error);
  EXPECT_THROW(WelfareSeries(seq, kValues, 0, AuctionRules{}), Error);
}

TEST(PropertyTest, WelfareInUnitInterval) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    const BidSequence seq(oracle::RandomLog(rng, 37, 5, 60.0, trial % 2 == 0));
    for (const auto& b : WelfareSeries(seq, kValues, 10, AuctionRules{})) {
      EXPECT_GE(b.normalized, -1e-12);
      EXPECT_LE(b.normalized, 1.0 + 1e-12);
    }
  }
}

TEST(CorrelationTest, LinearAndReversed) {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  const std::vector<double> up = {3, 5, 7, 9, 11};
  const std::vector<double> down = {10, 8, 6, 4, 2};
  for (auto kind : {Correlation::kPearson, Correlation::kSpearman}) {
    EXPECT_NEAR(Correlate(x, up, kind), 1.0, 1e-12);
    EXPECT_NEAR(Correlate(x, down, kind), -1.0, 1e-12);
  }
  // Monotone but nonlinear: Spearman is exactly 1.
  const std::vector<double> cube = {1, 8, 27, 64, 125};
  EXPECT_NEAR(Correlate(x, cube, Correlation::kSpearman), 1.0, 1e-12);
  EXPECT_LT(Correlate(x, cube, Correlation::kPearson), 1.0);
}

TEST(CorrelationTest, SixPointFixture) {
  // Hand computation: Pearson 77.5 / sqrt(17.5 * 587.5); tied ranks of y are
  // (1, 3.5, 3.5, 2, 6, 5), giving Spearman 13 / sqrt(17.5 * 17).
  const std::vector<double> x = {1, 2, 3, 4, 5, 6};
  const std::vector<double> y = {10, 20, 20, 15, 40, 30};
  EXPECT_NEAR(Correlate(x, y, Correlation::kPearson), 0.7643261927183838, 1e-12);
  EXPECT_NEAR(Correlate(x, y, Correlation::kSpearman), 0.753702346348183, 1e-12);
}

TEST(CorrelationTest, Errors) {
  const std::vector<double> x = {1, 2, 3};
  const std::vector<double> flat = {4, 4, 4};
  const std::vector<double> shorter = {1, 2};
  const std::vector<double> one = {1};
  EXPECT_THROW(Correlate(x, flat, Correlation::kPearson), Error);
  EXPECT_THROW(Correlate(x, flat, Correlation::kSpearman), Error);
  EXPECT_THROW(Correlate(x, shorter, Correlation::kPearson), Error);
  EXPECT_THROW(Correlate(one, one, Correlation::kPearson), Error);
}

EstimateRecord Record(int bidder, const std::string& label, double estimate) {
  EstimateRecord r;
  r.bidder = bidder;
  r.label = label;
  r.estimate = estimate;
  return r;
}

TEST(EvaluateTest, GroupsByLabel) {
  std::vector<EstimateRecord> recs;
  const std::vector<double> over = {28.77, 27, 33, 39, 45};
  for (int i = 0; i < 5; ++i) {
    recs.push_back(Record(i, "avg-bid", kValues[i]));
    recs.push_back(Record(i, "regret-min", over[i]));
  }
  const std::vector<int> ranks = {5, 4, 3, 2, 1};
  const EvaluationReport rep = Evaluate(recs, kValues, ranks);
  ASSERT_EQ(rep.methods.size(), 2u);
  EXPECT_EQ(rep.methods[0].method, "avg-bid");
  EXPECT_EQ(rep.methods[0].rms, 0.0);
  EXPECT_FALSE(rep.methods[0].pearson_type_error.has_value());

  const MethodEvaluation& m = rep.methods[1];
  EXPECT_NEAR(m.errors[0], 0.37, 1e-12);
  EXPECT_NEAR(m.rms, std::sqrt(0.37 * 0.37 / 5), 1e-12);
  EXPECT_NEAR(m.mean, 0.37 / 5, 1e-12);
  EXPECT_NEAR(*m.bias.Factor(5), 1.37, 1e-12);
  EXPECT_NEAR(m.unbiased_estimates[0], 21.0, 1e-12);
  EXPECT_NEAR(m.unbiased_rms, 0.0, 1e-12);
  EXPECT_NEAR(m.rms_by_type.at(21), 0.37, 1e-12);
  EXPECT_NEAR(m.rms_by_rank.at(5), 0.37, 1e-12);
  EXPECT_EQ(m.rms_by_rank.at(1), 0.0);
  ASSERT_TRUE(m.spearman_type_error.has_value());
  // Only the lowest type has error: error ranks (5, 2.5, 2.5, 2.5, 2.5).
  const std::vector<double> e = {5, 2.5, 2.5, 2.5, 2.5};
  const std::vector<double> r = {1, 2, 3, 4, 5};
  EXPECT_NEAR(*m.spearman_type_error, Correlate(r, e, Correlation::kPearson),
              1e-12);
}

TEST(EvaluateTest, Errors) {
  std::vector<EstimateRecord> recs = {Record(7, "x", 1)};
  const std::vector<int> ranks = {5, 4, 3, 2, 1};
  EXPECT_THROW(Evaluate(recs, kValues, ranks), Error);
  const std::vector<int> short_ranks = {1};
  EXPECT_THROW(Evaluate({}, kValues, short_ranks), Error);
}

TEST(EvaluateTest, Serialization) {
  std::vector<EstimateRecord> recs;
  for (int i = 0; i < 5; ++i) recs.push_back(Record(i, "avg-bid", kValues[i] + 1));
  const std::vector<int> ranks = {5, 4, 3, 2, 1};
  const EvaluationReport rep = Evaluate(recs, kValues, ranks);
  const nlohmann::json j = ToJson(rep);
  ASSERT_EQ(j["methods"].size(), 1u);
  const auto& m = j["methods"][0];
  EXPECT_EQ(m["method"], "avg-bid");
  EXPECT_EQ(m["bidders"].size(), 5u);
  EXPECT_EQ(m["bidders"][0]["bidder_id"], 1);
  EXPECT_EQ(m["bidders"][0]["modal_rank"], 5);
  EXPECT_DOUBLE_EQ(m["bidders"][0]["estimate"].get<double>(), 22.0);
  EXPECT_EQ(m["by_rank"].size(), 5u);
  EXPECT_EQ(m["bias_factors"].size(), 5u);
  EXPECT_TRUE(m["correlations"].contains("spearman_type_error"));

  const std::string csv = ToCsv(rep);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "method,bidder_id,true_value,estimate,relative_error,modal_rank,"
            "unbiased_estimate");
  EXPECT_NE(csv.find("avg-bid,1,21.000000,22.000000,0.047619,5,21.000000\n"),
            std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
}

}  // namespace
}  // namespace adregret
