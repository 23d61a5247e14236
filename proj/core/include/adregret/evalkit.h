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

// Accuracy metrics for valuation estimates against known ground truth.

#ifndef ADREGRET_EVALKIT_H_
#define ADREGRET_EVALKIT_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "adregret/auction.h"
#include "adregret/bid_sequence.h"
#include "adregret/estimators.h"

namespace adregret {

// |v - v_hat| / v. Throws Error(kInvalidArgument) when v <= 0.
double RelativeError(double value, double estimate);

// sqrt(mean(e^2)). Throws Error(kInvalidArgument) on an empty set.
double RmsError(std::span<const double> errors);

struct ModalPosition {
  int rank = 0;
  bool tied = false;  // several ranks shared the top count; the best was taken
};

// Most frequent slot of `bidder` over the window.
ModalPosition ModalPositionOf(const BidSequence& seq, int bidder,
                              const Window& window);
std::vector<ModalPosition> ModalPositions(const BidSequence& seq,
                                          const Window& window);

// factor(rank) = mean of v_hat / v over bidders whose modal rank is `rank`.
// Ranks with no bidders are absent.
struct BiasTable {
  std::map<int, double> factors;

  std::optional<double> Factor(int rank) const;
};

BiasTable BiasFactors(std::span<const double> estimates,
                      std::span<const double> true_values,
                      std::span<const int> modal_ranks);

// v_hat / factor. Throws Error(kInvalidArgument) when factor <= 0.
double Unbias(double estimate, double factor);

struct WelfareBlock {
  int index = 0;
  Window window;
  bool partial = false;
  // Mean over the block of (SW - SW_worst) / (SW_best - SW_worst).
  double normalized = 0.0;
};

// Best and worst achievable welfare for these values: sorted and
// reverse-sorted dot products with the CTRs.
double BestWelfare(const CtrProfile& ctrs, std::span<const double> values);
double WorstWelfare(const CtrProfile& ctrs, std::span<const double> values);

// Normalized welfare per block of `block_len` auctions. Empty when every
// value is equal (the normalization is undefined).
std::vector<WelfareBlock> WelfareSeries(const BidSequence& seq,
                                        std::span<const double> values,
                                        int block_len,
                                        const AuctionRules& rules);

enum class Correlation { kPearson, kSpearman };

// Throws Error(kInvalidArgument) on length mismatch, fewer than two points,
// or zero variance. Spearman uses average ranks for ties.
double Correlate(std::span<const double> x, std::span<const double> y,
                 Correlation kind);

// Per-method accuracy summary.
struct MethodEvaluation {
  std::string method;
  std::vector<int> bidders;
  std::vector<double> estimates;
  std::vector<double> true_values;
  std::vector<double> errors;
  std::vector<int> modal_ranks;
  double rms = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  // RMS error keyed by true value (type) and by modal rank.
  std::map<double, double> rms_by_type;
  std::map<int, double> rms_by_rank;
  BiasTable bias;
  std::vector<double> unbiased_estimates;
  double unbiased_rms = 0.0;
  // Correlation of true value with relative error.
  std::optional<double> pearson_type_error;
  std::optional<double> spearman_type_error;
};

struct EvaluationReport {
  std::vector<MethodEvaluation> methods;
};

// Groups the records by label and scores every group. `true_values` and
// `modal_ranks` are indexed by bidder.
EvaluationReport Evaluate(std::span<const EstimateRecord> estimates,
                          std::span<const double> true_values,
                          std::span<const int> modal_ranks);

nlohmann::json ToJson(const EvaluationReport& report);
// One row per (method, bidder).
std::string ToCsv(const EvaluationReport& report);

}  // namespace adregret

#endif  // ADREGRET_EVALKIT_H_
