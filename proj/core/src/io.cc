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

#include "adregret/io.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "adregret/error.h"

namespace adregret {
namespace {

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Reads the next non-comment, non-blank line. `line_no` tracks the physical
// line number.
bool NextRecord(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    line = Trim(line);
    if (line.empty() || line[0] == '#') continue;
    return true;
  }
  return false;
}

Error ParseError(const std::string& source, int line_no,
                 const std::string& what) {
  return Error(ErrorCode::kParse,
               source + ":" + std::to_string(line_no) + ": " + what);
}

int ParseIntField(const std::string& text, const std::string& source,
                  int line_no, const char* name) {
  const std::string t = Trim(text);
  int value = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty()) {
    throw ParseError(source, line_no,
                     std::string("non-integer ") + name + " '" + t + "'");
  }
  return value;
}

double ParseDoubleField(const std::string& text, const std::string& source,
                        int line_no, const char* name) {
  const std::string t = Trim(text);
  double value = 0.0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty() ||
      !std::isfinite(value)) {
    throw ParseError(source, line_no,
                     std::string("non-numeric ") + name + " '" + t + "'");
  }
  return value;
}

void ExpectHeader(std::istream& in, const std::string& expected,
                  const std::string& source, int& line_no) {
  std::string line;
  if (!NextRecord(in, line, line_no)) {
    throw ParseError(source, line_no, "empty file, expected header " + expected);
  }
  if (line != expected) {
    throw ParseError(source, line_no,
                     "bad header '" + line + "', expected " + expected);
  }
}

std::ifstream OpenForRead(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return in;
}

double CheckedBid(double bid, const std::string& source, int line_no) {
  if (bid < 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                source + ":" + std::to_string(line_no) + ": negative bid " +
                    FormatFixed(bid));
  }
  return bid;
}

}  // namespace

std::string FormatFixed(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

double RoundForOutput(double x) {
  const double r = std::round(x * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;
}

BidSequence ParseBidLog(std::istream& in, const std::string& source) {
  int line_no = 0;
  ExpectHeader(in, "auction_index,bidder_id,bid", source, line_no);
  std::vector<std::vector<std::optional<double>>> rows;
  int bidders = 0;
  std::string line;
  while (NextRecord(in, line, line_no)) {
    const auto f = SplitFields(line);
    if (f.size() != 3) {
      throw ParseError(source, line_no, "expected 3 fields");
    }
    const int t = ParseIntField(f[0], source, line_no, "auction_index");
    const int id = ParseIntField(f[1], source, line_no, "bidder_id");
    const double bid =
        CheckedBid(ParseDoubleField(f[2], source, line_no, "bid"), source, line_no);
    if (t < 1 || id < 1) {
      throw ParseError(source, line_no, "indices must be >= 1");
    }
    if (t > static_cast<int>(rows.size())) rows.resize(t);
    bidders = std::max(bidders, id);
    auto& row = rows[t - 1];
    if (id > static_cast<int>(row.size())) row.resize(id);
    if (row[id - 1]) {
      throw Error(ErrorCode::kDuplicate,
                  source + ":" + std::to_string(line_no) +
                      ": duplicate bid for auction " + std::to_string(t) +
                      " bidder " + std::to_string(id));
    }
    row[id - 1] = bid;
  }
  if (rows.empty()) throw Error(ErrorCode::kParse, source + ": no bids");
  std::vector<double> flat;
  flat.reserve(rows.size() * bidders);
  for (std::size_t t = 0; t < rows.size(); ++t) {
    rows[t].resize(bidders);
    for (int i = 0; i < bidders; ++i) {
      if (!rows[t][i]) {
        throw Error(ErrorCode::kIncompleteProfile,
                    "incomplete profile at auction " + std::to_string(t + 1) +
                        ": missing bidder " + std::to_string(i + 1));
      }
      flat.push_back(*rows[t][i]);
    }
  }
  return BidSequence(bidders, std::move(flat));
}

BidSequence LoadBidLog(const std::string& path) {
  auto in = OpenForRead(path);
  return ParseBidLog(in, path);
}

BidSequence ParseWideBidLog(std::istream& in, const std::string& source) {
  int line_no = 0;
  std::string line;
  if (!NextRecord(in, line, line_no)) {
    throw ParseError(source, line_no, "empty file");
  }
  const auto header = SplitFields(line);
  if (header.size() < 3 || header[0] != "auction_index") {
    throw ParseError(source, line_no,
                     "bad header, expected auction_index,b1,...,bn");
  }
  const int bidders = static_cast<int>(header.size()) - 1;
  std::vector<double> flat;
  int expected = 1;
  while (NextRecord(in, line, line_no)) {
    const auto f = SplitFields(line);
    if (static_cast<int>(f.size()) != bidders + 1) {
      throw Error(ErrorCode::kIncompleteProfile,
                  "incomplete profile at auction " + std::to_string(expected));
    }
    const int t = ParseIntField(f[0], source, line_no, "auction_index");
    if (t != expected) {
      throw ParseError(source, line_no,
                       "auction indices must be contiguous from 1");
    }
    for (int i = 1; i <= bidders; ++i) {
      flat.push_back(CheckedBid(ParseDoubleField(f[i], source, line_no, "bid"),
                                source, line_no));
    }
    ++expected;
  }
  if (flat.empty()) throw Error(ErrorCode::kParse, source + ": no bids");
  return BidSequence(bidders, std::move(flat));
}

BidSequence LoadWideBidLog(const std::string& path) {
  auto in = OpenForRead(path);
  return ParseWideBidLog(in, path);
}

std::string BidLogCsv(const BidSequence& seq) {
  std::ostringstream out;
  out << "auction_index,bidder_id,bid\n";
  for (int t = 1; t <= seq.auctions(); ++t) {
    for (int i = 0; i < seq.bidders(); ++i) {
      out << t << ',' << i + 1 << ',' << FormatFixed(seq.bid(t, i)) << '\n';
    }
  }
  return out.str();
}

std::vector<double> ParseValues(std::istream& in, const std::string& source) {
  int line_no = 0;
  ExpectHeader(in, "bidder_id,value", source, line_no);
  std::vector<std::optional<double>> values;
  std::string line;
  while (NextRecord(in, line, line_no)) {
    const auto f = SplitFields(line);
    if (f.size() != 2) throw ParseError(source, line_no, "expected 2 fields");
    const int id = ParseIntField(f[0], source, line_no, "bidder_id");
    const double v = ParseDoubleField(f[1], source, line_no, "value");
    if (id < 1) throw ParseError(source, line_no, "bidder_id must be >= 1");
    if (id > static_cast<int>(values.size())) values.resize(id);
    if (values[id - 1]) {
      throw Error(ErrorCode::kDuplicate,
                  source + ":" + std::to_string(line_no) +
                      ": duplicate value for bidder " + std::to_string(id));
    }
    values[id - 1] = v;
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i]) {
      throw Error(ErrorCode::kIncompleteProfile,
                  source + ": missing value for bidder " + std::to_string(i + 1));
    }
    out.push_back(*values[i]);
  }
  if (out.empty()) throw Error(ErrorCode::kParse, source + ": no values");
  return out;
}

std::vector<double> LoadValues(const std::string& path) {
  auto in = OpenForRead(path);
  return ParseValues(in, path);
}

std::string ValuesCsv(std::span<const double> values) {
  std::ostringstream out;
  out << "bidder_id,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << i + 1 << ',' << FormatFixed(values[i]) << '\n';
  }
  return out.str();
}

std::vector<EstimateRecord> ParseEstimates(std::istream& in,
                                           const std::string& source) {
  int line_no = 0;
  ExpectHeader(in, "bidder_id,method,estimate,window_first,window_last,flags",
               source, line_no);
  std::vector<EstimateRecord> records;
  std::string line;
  while (NextRecord(in, line, line_no)) {
    const auto f = SplitFields(line);
    if (f.size() != 6) throw ParseError(source, line_no, "expected 6 fields");
    EstimateRecord r;
    r.bidder = ParseIntField(f[0], source, line_no, "bidder_id") - 1;
    r.label = Trim(f[1]);
    const std::string base = r.label.substr(0, r.label.find('('));
    try {
      r.method = ParseMethod(base);
    } catch (const Error&) {
      throw ParseError(source, line_no, "unknown method '" + base + "'");
    }
    const std::string est = Trim(f[2]);
    r.estimate = est == "nan" ? std::nan("")
                              : ParseDoubleField(est, source, line_no, "estimate");
    r.window.first = ParseIntField(f[3], source, line_no, "window_first");
    r.window.last = ParseIntField(f[4], source, line_no, "window_last");
    r.bid_count = r.window.size();
    std::istringstream fl(Trim(f[5]));
    std::string flag;
    while (std::getline(fl, flag, '|')) {
      if (!flag.empty()) r.flags.push_back(flag);
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<EstimateRecord> LoadEstimates(const std::string& path) {
  auto in = OpenForRead(path);
  return ParseEstimates(in, path);
}

std::string EstimatesCsv(std::span<const EstimateRecord> records) {
  std::ostringstream out;
  out << "bidder_id,method,estimate,window_first,window_last,flags\n";
  for (const EstimateRecord& r : records) {
    out << r.bidder + 1 << ',' << r.label << ',' << FormatFixed(r.estimate)
        << ',' << r.window.first << ',' << r.window.last << ',';
    for (std::size_t k = 0; k < r.flags.size(); ++k) {
      out << (k ? "|" : "") << r.flags[k];
    }
    out << '\n';
  }
  return out.str();
}

std::string OutcomesCsv(std::span<const AuctionOutcome> outcomes) {
  std::ostringstream out;
  out << "auction_index,bidder_id,position,expenditure,utility\n";
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    const AuctionOutcome& o = outcomes[t];
    for (std::size_t i = 0; i < o.positions.size(); ++i) {
      out << t + 1 << ',' << i + 1 << ',' << o.positions[i] << ','
          << FormatFixed(o.expenditures[i]) << ','
          << (o.utilities.empty() ? std::string("nan")
                                  : FormatFixed(o.utilities[i]))
          << '\n';
    }
  }
  return out.str();
}

std::string RegretCurvesCsv(std::span<const RegretCurve> curves) {
  std::ostringstream out;
  out << "bidder,v,actual,opt,regret,relative\n";
  for (const RegretCurve& c : curves) {
    for (int k = 0; k < c.size(); ++k) {
      const RegretReport& r = c.reports[k];
      out << c.bidder + 1 << ',' << FormatFixed(c.values[k]) << ','
          << FormatFixed(r.actual) << ',' << FormatFixed(r.opt) << ','
          << FormatFixed(r.regret) << ','
          << (r.relative ? FormatFixed(*r.relative) : std::string("")) << '\n';
    }
  }
  return out.str();
}

std::string MomentaryCsv(std::span<const MomentaryBlock> blocks) {
  std::ostringstream out;
  out << "block,group,relative,first,last,partial,regret,opt\n";
  for (const MomentaryBlock& b : blocks) {
    out << b.index << ',' << b.group << ','
        << (b.regret.relative ? FormatFixed(*b.regret.relative) : std::string(""))
        << ',' << b.window.first << ',' << b.window.last << ','
        << (b.partial ? 1 : 0) << ',' << FormatFixed(b.regret.regret) << ','
        << FormatFixed(b.regret.opt) << '\n';
  }
  return out.str();
}

std::string DeviationsCsv(std::span<const AuctionDeviation> deviations) {
  std::ostringstream out;
  out << "auction_index,mean_abs_deviation,consistent,excluded\n";
  for (const AuctionDeviation& d : deviations) {
    out << d.auction << ',' << FormatFixed(d.mean_abs_deviation) << ','
        << (d.consistent ? 1 : 0) << ',' << (d.excluded ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string ResponseCurvesCsv(std::span<const ResponseCurves> curves) {
  std::ostringstream out;
  out << "bidder,b,Q,TE\n";
  for (const ResponseCurves& c : curves) {
    for (int k = 0; k < c.size(); ++k) {
      out << c.bidder + 1 << ',' << FormatFixed(c.bids[k]) << ','
          << FormatFixed(c.q[k]) << ',' << FormatFixed(c.te[k]) << '\n';
    }
  }
  return out.str();
}

std::string WelfareCsv(std::span<const WelfareBlock> blocks) {
  std::ostringstream out;
  out << "block,first,last,partial,normalized_welfare\n";
  for (const WelfareBlock& b : blocks) {
    out << b.index << ',' << b.window.first << ',' << b.window.last << ','
        << (b.partial ? 1 : 0) << ',' << FormatFixed(b.normalized) << '\n';
  }
  return out.str();
}

std::string ReadFile(const std::string& path) {
  auto in = OpenForRead(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileAtomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot move '" + tmp.string() + "' to '" +
                                    path + "': " + ec.message());
  }
}

}  // namespace adregret
