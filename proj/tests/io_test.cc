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

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "adregret/bid_sequence.h"
#include "adregret/error.h"

namespace adregret {
namespace {

ErrorCode CodeOf(const std::function<void()>& f, std::string* message = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kUndefined;
}

BidSequence Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseBidLog(in, "log.csv");
}

TEST(WindowTest, SecondHalf) {
  EXPECT_EQ(Window::SecondHalf(1500), (Window{751, 1500}));
  EXPECT_EQ(Window::SecondHalf(1), (Window{1, 1}));
  EXPECT_EQ(Window::Full(20), (Window{1, 20}));
  EXPECT_EQ(ParseWindow("3:9"), (Window{3, 9}));
  EXPECT_EQ(CodeOf([] { ParseWindow("9"); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { ParseWindow("a:b"); }), ErrorCode::kParse);
}

TEST(BidSequenceTest, ShapeAndAccess) {
  const BidSequence seq({{1, 2, 3}, {4, 5, 6}});
  EXPECT_EQ(seq.bidders(), 3);
  EXPECT_EQ(seq.auctions(), 2);
  EXPECT_EQ(seq.bid(2, 1), 5.0);
  EXPECT_EQ(seq.profile(1)[2], 3.0);
  EXPECT_NO_THROW(seq.CheckWindow({1, 2}));
  EXPECT_EQ(CodeOf([&] { seq.CheckWindow({0, 2}); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(CodeOf([&] { seq.CheckWindow({2, 3}); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(CodeOf([&] { seq.CheckWindow({2, 1}); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(CodeOf([&] { seq.CheckBidder(3); }), ErrorCode::kOutOfRange);
}

TEST(BidSequenceTest, RaggedOrNegativeRejected) {
  EXPECT_EQ(CodeOf([] { BidSequence({{1, 2}, {3}}); }),
            ErrorCode::kLengthMismatch);
  EXPECT_EQ(CodeOf([] { BidSequence({{1, -2}}); }),
            ErrorCode::kInvalidArgument);
}

TEST(GridTest, Integers) {
  const Grid g = Grid::Default();
  EXPECT_EQ(g.size(), 60);
  EXPECT_EQ(g.min(), 1.0);
  EXPECT_EQ(g.max(), 60.0);
  EXPECT_EQ(g.IndexOf(33), 32);
  EXPECT_EQ(g.IndexOf(33.5), -1);
  EXPECT_EQ(ParseGrid("5:7"), Grid::Integers(5, 7));
  EXPECT_EQ(CodeOf([] { Grid({1, 1}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { Grid(std::vector<double>{}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { ParseGrid("7:5"); }), ErrorCode::kParse);
}

TEST(BidLogTest, WellFormed) {
  const BidSequence seq = Parse(
      "auction_index,bidder_id,bid\n1,1,3.5\n1,2,4\n2,2,1\n2,1,0\n");
  EXPECT_EQ(seq.auctions(), 2);
  EXPECT_EQ(seq.bidders(), 2);
  EXPECT_EQ(seq.bid(2, 0), 0.0);
  EXPECT_EQ(seq.bid(1, 0), 3.5);
}

TEST(BidLogTest, CommentsAndBlankLinesSkipped) {
  const BidSequence seq = Parse(
      "# manifest\nauction_index,bidder_id,bid\n\n1,1,3\n# note\n1,2,4\n");
  EXPECT_EQ(seq.auctions(), 1);
}

TEST(BidLogTest, MissingBidderNamesAuction) {
  std::string text = "auction_index,bidder_id,bid\n";
  for (int t = 1; t <= 8; ++t) {
    for (int i = 1; i <= 3; ++i) {
      if (t == 7 && i == 3) continue;
      text += std::to_string(t) + "," + std::to_string(i) + ",1\n";
    }
  }
  std::string msg;
  EXPECT_EQ(CodeOf([&] { Parse(text); }, &msg), ErrorCode::kIncompleteProfile);
  EXPECT_NE(msg.find("incomplete profile at auction 7"), std::string::npos);
}

TEST(BidLogTest, NonNumericBidNamesLine) {
  std::string msg;
  EXPECT_EQ(CodeOf([] { Parse("auction_index,bidder_id,bid\n1,1,2\n1,2,abc\n"); },
                   &msg),
            ErrorCode::kParse);
  EXPECT_NE(msg.find(":3:"), std::string::npos) << msg;
}

TEST(BidLogTest, NegativeBid) {
  EXPECT_EQ(CodeOf([] { Parse("auction_index,bidder_id,bid\n1,1,-1\n"); }),
            ErrorCode::kInvalidArgument);
}

TEST(BidLogTest, DuplicatePair) {
  EXPECT_EQ(CodeOf([] {
              Parse("auction_index,bidder_id,bid\n1,1,2\n1,1,3\n");
            }),
            ErrorCode::kDuplicate);
}

TEST(BidLogTest, BadHeaderAndFieldCount) {
  EXPECT_EQ(CodeOf([] { Parse("t,i,b\n1,1,2\n"); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { Parse("auction_index,bidder_id,bid\n1,1\n"); }),
            ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { Parse("auction_index,bidder_id,bid\n"); }),
            ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { Parse("auction_index,bidder_id,bid\n0,1,1\n"); }),
            ErrorCode::kParse);
}

TEST(BidLogTest, MissingAuctionIsIncomplete) {
  EXPECT_EQ(CodeOf([] {
              Parse("auction_index,bidder_id,bid\n1,1,1\n3,1,1\n");
            }),
            ErrorCode::kIncompleteProfile);
}

TEST(BidLogTest, RoundTrip) {
  const BidSequence seq({{1.25, 2, 3}, {4, 5.5, 0}});
  EXPECT_EQ(Parse(BidLogCsv(seq)), seq);
}

TEST(WideBidLogTest, Parses) {
  std::istringstream in("auction_index,b1,b2\n1,3,4\n2,5,6\n");
  const BidSequence seq = ParseWideBidLog(in);
  EXPECT_EQ(seq, BidSequence({{3, 4}, {5, 6}}));
  std::istringstream short_row("auction_index,b1,b2\n1,3\n");
  EXPECT_EQ(CodeOf([&] { ParseWideBidLog(short_row); }),
            ErrorCode::kIncompleteProfile);
  std::istringstream gap("auction_index,b1,b2\n2,3,4\n");
  EXPECT_EQ(CodeOf([&] { ParseWideBidLog(gap); }), ErrorCode::kParse);
}

TEST(ValuesTest, RoundTripAndErrors) {
  const std::vector<double> v = {21, 27.5};
  std::istringstream in(ValuesCsv(v));
  EXPECT_EQ(ParseValues(in), v);
  std::istringstream dup("bidder_id,value\n1,2\n1,3\n");
  EXPECT_EQ(CodeOf([&] { ParseValues(dup); }), ErrorCode::kDuplicate);
  std::istringstream gap("bidder_id,value\n2,3\n");
  EXPECT_EQ(CodeOf([&] { ParseValues(gap); }), ErrorCode::kIncompleteProfile);
}

TEST(EstimatesTest, RoundTrip) {
  EstimateRecord r;
  r.bidder = 2;
  r.method = Method::kCombined;
  r.label = "combined(regret-min+avg-bid)";
  r.estimate = 33.25;
  r.window = {751, 1500};
  r.flags = {"argmin_range", "zero_regret_limit"};
  const std::vector<EstimateRecord> rows = {r};
  std::istringstream in(EstimatesCsv(rows));
  const auto back = ParseEstimates(in);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].bidder, 2);
  EXPECT_EQ(back[0].method, Method::kCombined);
  EXPECT_EQ(back[0].label, r.label);
  EXPECT_EQ(back[0].estimate, 33.25);
  EXPECT_EQ(back[0].window, r.window);
  EXPECT_EQ(back[0].flags, r.flags);
}

TEST(EstimatesTest, UnknownMethod) {
  std::istringstream in(
      "bidder_id,method,estimate,window_first,window_last,flags\n1,guess,3,1,2,\n");
  EXPECT_EQ(CodeOf([&] { ParseEstimates(in); }), ErrorCode::kParse);
}

TEST(FormatTest, SixDecimals) {
  EXPECT_EQ(FormatFixed(1.0 / 3.0), "0.333333");
  EXPECT_EQ(FormatFixed(-0.0), "0.000000");
  EXPECT_EQ(FormatFixed(-1e-9), "0.000000");
  EXPECT_EQ(FormatFixed(std::nan("")), "nan");
  EXPECT_EQ(RoundForOutput(2.0000004), 2.0);
}

TEST(FileTest, AtomicWriteAndRead) {
  const auto dir = std::filesystem::temp_directory_path() / "adregret_io_test";
  std::filesystem::remove_all(dir);
  const std::string path = (dir / "sub" / "x.csv").string();
  WriteFileAtomic(path, "hello\n");
  EXPECT_EQ(ReadFile(path), "hello\n");
  WriteFileAtomic(path, "again\n");
  EXPECT_EQ(ReadFile(path), "again\n");
  EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
  EXPECT_EQ(CodeOf([&] { ReadFile((dir / "missing").string()); }),
            ErrorCode::kIo);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace adregret
