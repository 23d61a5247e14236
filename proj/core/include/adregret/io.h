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

// CSV readers and writers. Bidder ids in files are 1-based; in memory they
// are 0-based. Lines starting with '#' are comments and are skipped on read.
// All numbers are written with six decimals.

#ifndef ADREGRET_IO_H_
#define ADREGRET_IO_H_

#include <istream>
#include <span>
#include <string>
#include <vector>

#include "adregret/auction.h"
#include "adregret/bid_sequence.h"
#include "adregret/equilibrium.h"
#include "adregret/estimators.h"
#include "adregret/evalkit.h"
#include "adregret/regret.h"

namespace adregret {

// "%.6f", with negative zero printed as zero and NaN as "nan".
std::string FormatFixed(double x);
// x rounded to six decimals (for JSON output).
double RoundForOutput(double x);

// Long form: header auction_index,bidder_id,bid; one row per (auction,
// bidder); auctions contiguous from 1; bidders 1..n every auction.
BidSequence ParseBidLog(std::istream& in, const std::string& source = "<input>");
BidSequence LoadBidLog(const std::string& path);
// Wide form: header auction_index,b1,...,bn; one row per auction.
BidSequence ParseWideBidLog(std::istream& in,
                            const std::string& source = "<input>");
BidSequence LoadWideBidLog(const std::string& path);
std::string BidLogCsv(const BidSequence& seq);

// Header bidder_id,value; ids 1..n each exactly once.
std::vector<double> ParseValues(std::istream& in,
                                const std::string& source = "<input>");
std::vector<double> LoadValues(const std::string& path);
std::string ValuesCsv(std::span<const double> values);

// Header bidder_id,method,estimate,window_first,window_last,flags; flags are
// '|'-separated.
std::vector<EstimateRecord> ParseEstimates(std::istream& in,
                                           const std::string& source = "<input>");
std::vector<EstimateRecord> LoadEstimates(const std::string& path);
std::string EstimatesCsv(std::span<const EstimateRecord> records);

std::string OutcomesCsv(std::span<const AuctionOutcome> outcomes);
std::string RegretCurvesCsv(std::span<const RegretCurve> curves);
std::string MomentaryCsv(std::span<const MomentaryBlock> blocks);
std::string DeviationsCsv(std::span<const AuctionDeviation> deviations);
std::string ResponseCurvesCsv(std::span<const ResponseCurves> curves);
std::string WelfareCsv(std::span<const WelfareBlock> blocks);

std::string ReadFile(const std::string& path);
// Writes to a temporary file next to `path` and renames it into place.
void WriteFileAtomic(const std::string& path, const std::string& content);

}  // namespace adregret

#endif  // ADREGRET_IO_H_
