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

#include "adregret/bid_sequence.h"

#include <algorithm>
#include <charconv>
#include <string>

#include "adregret/auction.h"
#include "adregret/error.h"

namespace adregret {
namespace {

std::pair<int, int> ParseIntPair(const std::string& text, const char* what) {
  const auto colon = text.find(':');
  auto fail = [&]() {
    return Error(ErrorCode::kParse, std::string("malformed ") + what + " '" +
                                        text + "', expected a:b");
  };
  if (colon == std::string::npos) throw fail();
  int a = 0;
  int b = 0;
  const char* begin = text.data();
  const char* mid = begin + colon;
  const char* end = begin + text.size();
  auto [pa, ea] = std::from_chars(begin, mid, a);
  auto [pb, eb] = std::from_chars(mid + 1, end, b);
  if (ea != std::errc() || pa != mid || eb != std::errc() || pb != end) {
    throw fail();
  }
  return {a, b};
}

}  // namespace

Window Window::SecondHalf(int auctions) { return {auctions / 2 + 1, auctions}; }

Window Window::Full(int auctions) { return {1, auctions}; }

Window ParseWindow(const std::string& text) {
  auto [a, b] = ParseIntPair(text, "window");
  return {a, b};
}

BidSequence::BidSequence(int bidders, std::vector<double> row_major_bids)
    : bidders_(bidders), bids_(std::move(row_major_bids)) {
  if (bidders_ <= 0 || bids_.empty() || bids_.size() % bidders_ != 0) {
    throw Error(ErrorCode::kLengthMismatch,
                "bid data does not form whole profiles");
  }
  ValidateBids(bids_);
}

BidSequence::BidSequence(const std::vector<std::vector<double>>& profiles) {
  for (const auto& p : profiles) Append(p);
}

void BidSequence::Append(std::span<const double> profile) {
  if (bidders_ == 0) bidders_ = static_cast<int>(profile.size());
  if (static_cast<int>(profile.size()) != bidders_ || bidders_ == 0) {
    throw Error(ErrorCode::kLengthMismatch,
                "profile length differs from bidder count");
  }
  ValidateBids(profile);
  bids_.insert(bids_.end(), profile.begin(), profile.end());
}

void BidSequence::CheckWindow(const Window& window) const {
  if (window.first < 1 || window.first > window.last ||
      window.last > auctions()) {
    throw Error(ErrorCode::kOutOfRange,
                "window " + std::to_string(window.first) + ":" +
                    std::to_string(window.last) + " outside auctions 1:" +
                    std::to_string(auctions()));
  }
}

void BidSequence::CheckBidder(int bidder) const {
  if (bidder < 0 || bidder >= bidders_) {
    throw Error(ErrorCode::kOutOfRange,
                "bidder " + std::to_string(bidder) + " out of range");
  }
}

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "grid must be nonempty");
  }
  if (!std::is_sorted(points_.begin(), points_.end()) ||
      std::adjacent_find(points_.begin(), points_.end()) != points_.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "grid must be strictly increasing");
  }
}

Grid Grid::Integers(int lo, int hi) {
  if (lo > hi) throw Error(ErrorCode::kInvalidArgument, "empty integer grid");
  std::vector<double> points;
  for (int x = lo; x <= hi; ++x) points.push_back(x);
  return Grid(std::move(points));
}

int Grid::IndexOf(double x) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), x);
  if (it == points_.end() || *it != x) return -1;
  return static_cast<int>(it - points_.begin());
}

Grid ParseGrid(const std::string& text) {
  auto [lo, hi] = ParseIntPair(text, "grid");
  if (lo > hi) throw Error(ErrorCode::kParse, "grid '" + text + "' is empty");
  return Grid::Integers(lo, hi);
}

}  // namespace adregret
