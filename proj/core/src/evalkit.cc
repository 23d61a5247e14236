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
#include <functional>
#include <numeric>
#include <sstream>

#include "adregret/error.h"
#include "adregret/io.h"

namespace adregret {

double RelativeError(double value, double estimate) {
  if (!(value > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "true value must be positive");
  }
  return std::abs(value - estimate) / value;
}

double RmsError(std::span<const double> errors) {
  if (errors.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "RMS of an empty set");
  }
  double total = 0.0;
  for (double e : errors) total += e * e;
  return std::sqrt(total / static_cast<double>(errors.size()));
}

ModalPosition ModalPositionOf(const BidSequence& seq, int bidder,
                              const Window& window) {
  seq.CheckBidder(bidder);
  seq.CheckWindow(window);
  std::vector<int> counts(seq.bidders(), 0);
  for (int t = window.first; t <= window.last; ++t) {
    ++counts[Allocate(seq.profile(t))[bidder] - 1];
  }
  const int top = *std::max_element(counts.begin(), counts.end());
  ModalPosition modal;
  for (int k = 0; k < seq.bidders(); ++k) {
    if (counts[k] != top) continue;
    if (modal.rank == 0) {
      modal.rank = k + 1;
    } else {
      modal.tied = true;
    }
  }
  return modal;
}

std::vector<ModalPosition> ModalPositions(const BidSequence& seq,
                                          const Window& window) {
  std::vector<ModalPosition> out;
  for (int i = 0; i < seq.bidders(); ++i) {
    out.push_back(ModalPositionOf(seq, i, window));
  }
  return out;
}

std::optional<double> BiasTable::Factor(int rank) const {
  const auto it = factors.find(rank);
  if (it == factors.end()) return std::nullopt;
  return it->second;
}

BiasTable BiasFactors(std::span<const double> estimates,
                      std::span<const double> true_values,
                      std::span<const int> modal_ranks) {
  if (estimates.size() != true_values.size() ||
      estimates.size() != modal_ranks.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "estimates, values and ranks differ in length");
  }
  std::map<int, std::pair<double, int>> acc;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    if (!(true_values[i] > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "true value must be positive");
    }
    auto& [sum, count] = acc[modal_ranks[i]];
    sum += estimates[i] / true_values[i];
    ++count;
  }
  BiasTable table;
  for (const auto& [rank, sc] : acc) {
    table.factors[rank] = sc.first / sc.second;
  }
  return table;
}

double Unbias(double estimate, double factor) {
  if (!(factor > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "bias factor must be positive");
  }
  return estimate / factor;
}

double BestWelfare(const CtrProfile& ctrs, std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end(), std::greater<>());
  return std::inner_product(v.begin(), v.end(), ctrs.rates().begin(), 0.0);
}

double WorstWelfare(const CtrProfile& ctrs, std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  return std::inner_product(v.begin(), v.end(), ctrs.rates().begin(), 0.0);
}

std::vector<WelfareBlock> WelfareSeries(const BidSequence& seq,
                                        std::span<const double> values,
                                        int block_len,
                                        const AuctionRules& rules) {
  if (static_cast<int>(values.size()) != seq.bidders()) {
    throw Error(ErrorCode::kLengthMismatch, "need one value per bidder");
  }
  if (block_len < 1) {
    throw Error(ErrorCode::kInvalidArgument, "block length must be >= 1");
  }
  const double best = BestWelfare(rules.ctrs, values);
  const double worst = WorstWelfare(rules.ctrs, values);
  std::vector<WelfareBlock> series;
  if (!(best > worst)) return series;

  const int auctions = seq.auctions();
  int index = 1;
  for (int begin = 1; begin <= auctions; begin += block_len, ++index) {
    const int end = std::min(auctions, begin + block_len - 1);
    double total = 0.0;
    for (int t = begin; t <= end; ++t) {
      const double sw = Welfare(rules.ctrs, Allocate(seq.profile(t)), values);
      total += (sw - worst) / (best - worst);
    }
    WelfareBlock block;
    block.index = index;
    block.window = {begin, end};
    block.partial = end - begin + 1 < block_len;
    block.normalized = total / (end - begin + 1);
    series.push_back(block);
  }
  return series;
}

namespace {

std::vector<double> AverageRanks(std::span<const double> x) {
  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  std::size_t k = 0;
  while (k < order.size()) {
    std::size_t j = k;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[k]]) ++j;
    const double avg = 0.5 * static_cast<double>(k + j) + 1.0;
    for (std::size_t m = k; m <= j; ++m) ranks[order[m]] = avg;
    k = j + 1;
  }
  return ranks;
}

double Pearson(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "correlation of a constant series");
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

double Correlate(std::span<const double> x, std::span<const double> y,
                 Correlation kind) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch, "correlation inputs differ in length");
  }
  if (x.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "correlation needs two points");
  }
  if (kind == Correlation::kPearson) return Pearson(x, y);
  const std::vector<double> rx = AverageRanks(x);
  const std::vector<double> ry = AverageRanks(y);
  return Pearson(rx, ry);
}

namespace {

std::optional<double> TryCorrelate(std::span<const double> x,
                                   std::span<const double> y,
                                   Correlation kind) {
  try {
    return Correlate(x, y, kind);
  } catch (const Error&) {
    return std::nullopt;
  }
}

MethodEvaluation EvaluateMethod(const std::string& label,
                                const std::vector<const EstimateRecord*>& recs,
                                std::span<const double> true_values,
                                std::span<const int> modal_ranks) {
  MethodEvaluation m;
  m.method = label;
  for (const EstimateRecord* r : recs) {
    if (r->bidder < 0 || r->bidder >= static_cast<int>(true_values.size())) {
      throw Error(ErrorCode::kOutOfRange,
                  "estimate for unknown bidder " + std::to_string(r->bidder));
    }
    m.bidders.push_back(r->bidder);
    m.estimates.push_back(r->estimate);
    m.true_values.push_back(true_values[r->bidder]);
    m.modal_ranks.push_back(modal_ranks[r->bidder]);
    m.errors.push_back(RelativeError(true_values[r->bidder], r->estimate));
  }
  m.rms = RmsError(m.errors);
  const double n = static_cast<double>(m.errors.size());
  m.mean = std::accumulate(m.errors.begin(), m.errors.end(), 0.0) / n;
  double var = 0.0;
  for (double e : m.errors) var += (e - m.mean) * (e - m.mean);
  m.stddev = std::sqrt(var / n);

  std::map<double, std::vector<double>> by_type;
  std::map<int, std::vector<double>> by_rank;
  for (std::size_t k = 0; k < m.errors.size(); ++k) {
    by_type[m.true_values[k]].push_back(m.errors[k]);
    by_rank[m.modal_ranks[k]].push_back(m.errors[k]);
  }
  for (const auto& [type, errs] : by_type) m.rms_by_type[type] = RmsError(errs);
  for (const auto& [rank, errs] : by_rank) m.rms_by_rank[rank] = RmsError(errs);

  m.bias = BiasFactors(m.estimates, m.true_values, m.modal_ranks);
  std::vector<double> fixed_errors;
  for (std::size_t k = 0; k < m.estimates.size(); ++k) {
    const double factor = *m.bias.Factor(m.modal_ranks[k]);
    m.unbiased_estimates.push_back(
        factor > 0.0 ? Unbias(m.estimates[k], factor) : m.estimates[k]);
    fixed_errors.push_back(
        RelativeError(m.true_values[k], m.unbiased_estimates.back()));
  }
  m.unbiased_rms = RmsError(fixed_errors);
  m.pearson_type_error =
      TryCorrelate(m.true_values, m.errors, Correlation::kPearson);
  m.spearman_type_error =
      TryCorrelate(m.true_values, m.errors, Correlation::kSpearman);
  return m;
}

nlohmann::json Number(double x) { return RoundForOutput(x); }

nlohmann::json Optional(const std::optional<double>& x) {
  return x ? Number(*x) : nlohmann::json(nullptr);
}

}  // namespace

EvaluationReport Evaluate(std::span<const EstimateRecord> estimates,
                          std::span<const double> true_values,
                          std::span<const int> modal_ranks) {
  if (true_values.size() != modal_ranks.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "true values and modal ranks differ in length");
  }
  std::vector<std::string> order;
  std::map<std::string, std::vector<const EstimateRecord*>> groups;
  for (const EstimateRecord& r : estimates) {
    if (!groups.count(r.label)) order.push_back(r.label);
    groups[r.label].push_back(&r);
  }
  EvaluationReport report;
  for (const std::string& label : order) {
    report.methods.push_back(
        EvaluateMethod(label, groups[label], true_values, modal_ranks));
  }
  return report;
}

nlohmann::json ToJson(const EvaluationReport& report) {
  nlohmann::json methods = nlohmann::json::array();
  for (const MethodEvaluation& m : report.methods) {
    nlohmann::json bidders = nlohmann::json::array();
    for (std::size_t k = 0; k < m.bidders.size(); ++k) {
      bidders.push_back({{"bidder_id", m.bidders[k] + 1},
                         {"true_value", Number(m.true_values[k])},
                         {"estimate", Number(m.estimates[k])},
                         {"relative_error", Number(m.errors[k])},
                         {"modal_rank", m.modal_ranks[k]},
                         {"unbiased_estimate", Number(m.unbiased_estimates[k])}});
    }
    nlohmann::json by_type = nlohmann::json::array();
    for (const auto& [type, rms] : m.rms_by_type) {
      by_type.push_back({{"type", Number(type)}, {"rms_error", Number(rms)}});
    }
    nlohmann::json by_rank = nlohmann::json::array();
    for (const auto& [rank, rms] : m.rms_by_rank) {
      by_rank.push_back({{"modal_rank", rank}, {"rms_error", Number(rms)}});
    }
    nlohmann::json bias = nlohmann::json::array();
    for (const auto& [rank, factor] : m.bias.factors) {
      bias.push_back({{"modal_rank", rank}, {"factor", Number(factor)}});
    }
    methods.push_back({
        {"method", m.method},
        {"bidders", bidders},
        {"rms_error", Number(m.rms)},
        {"mean_error", Number(m.mean)},
        {"stddev_error", Number(m.stddev)},
        {"by_type", by_type},
        {"by_rank", by_rank},
        {"bias_factors", bias},
        {"unbiased_rms_error", Number(m.unbiased_rms)},
        {"correlations",
         {{"pearson_type_error", Optional(m.pearson_type_error)},
          {"spearman_type_error", Optional(m.spearman_type_error)}}},
    });
  }
  return {{"methods", methods}};
}

std::string ToCsv(const EvaluationReport& report) {
  std::ostringstream out;
  out << "method,bidder_id,true_value,estimate,relative_error,modal_rank,"
         "unbiased_estimate\n";
  for (const MethodEvaluation& m : report.methods) {
    for (std::size_t k = 0; k < m.bidders.size(); ++k) {
      out << m.method << ',' << m.bidders[k] + 1 << ','
          << FormatFixed(m.true_values[k]) << ',' << FormatFixed(m.estimates[k])
          << ',' << FormatFixed(m.errors[k]) << ',' << m.modal_ranks[k] << ','
          << FormatFixed(m.unbiased_estimates[k]) << '\n';
    }
  }
  return out.str();
}

}  // namespace adregret
