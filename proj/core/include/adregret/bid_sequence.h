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

#ifndef ADREGRET_BID_SEQUENCE_H_
#define ADREGRET_BID_SEQUENCE_H_

#include <span>
#include <string>
#include <vector>

namespace adregret {

// Inclusive range of 1-based auction indices.
struct Window {
  int first = 1;
  int last = 1;

  int size() const { return last - first + 1; }
  bool operator==(const Window&) const = default;

  // Auctions floor(T/2)+1 .. T; (751, 1500) for T = 1500.
  static Window SecondHalf(int auctions);
  static Window Full(int auctions);
};

// Parses "a:b". Throws Error(kParse).
Window ParseWindow(const std::string& text);

// Time-indexed bid profiles b^1 .. b^T, all with the same number of bidders.
// Auction indices are 1-based, bidder indices 0-based.
class BidSequence {
 public:
  BidSequence() = default;
  BidSequence(int bidders, std::vector<double> row_major_bids);
  explicit BidSequence(const std::vector<std::vector<double>>& profiles);

  int bidders() const { return bidders_; }
  int auctions() const {
    return bidders_ == 0 ? 0 : static_cast<int>(bids_.size()) / bidders_;
  }

  std::span<const double> profile(int auction) const {
    return std::span<const double>(bids_).subspan(
        static_cast<std::size_t>(auction - 1) * bidders_, bidders_);
  }
  double bid(int auction, int bidder) const {
    return bids_[static_cast<std::size_t>(auction - 1) * bidders_ + bidder];
  }

  void Append(std::span<const double> profile);

  // Throws Error(kOutOfRange) unless 1 <= first <= last <= T.
  void CheckWindow(const Window& window) const;
  void CheckBidder(int bidder) const;

  bool operator==(const BidSequence&) const = default;

 private:
  int bidders_ = 0;
  std::vector<double> bids_;
};

// Candidate bids or valuations. Sorted ascending, no duplicates.
class Grid {
 public:
  explicit Grid(std::vector<double> points);

  // {lo, lo+1, ..., hi}.
  static Grid Integers(int lo, int hi);
  // {1, ..., 60}.
  static Grid Default() { return Integers(1, 60); }

  int size() const { return static_cast<int>(points_.size()); }
  double operator[](int k) const { return points_[k]; }
  double min() const { return points_.front(); }
  double max() const { return points_.back(); }
  std::span<const double> points() const { return points_; }

  // Index of the grid point equal to x, or -1.
  int IndexOf(double x) const;

  bool operator==(const Grid&) const = default;

 private:
  std::vector<double> points_;
};

// Parses "lo:hi" into an integer grid. Throws Error(kParse).
Grid ParseGrid(const std::string& text);

}  // namespace adregret

#endif  // ADREGRET_BID_SEQUENCE_H_
