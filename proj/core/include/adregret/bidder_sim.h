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

// Synthetic bidders with known valuations, and the repeated-auction loop that
// plays them against each other.

#ifndef ADREGRET_BIDDER_SIM_H_
#define ADREGRET_BIDDER_SIM_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "adregret/auction.h"
#include "adregret/bid_sequence.h"

namespace adregret {

// Bids v + N(0, sigma^2), clamped to [0, max bid].
struct TruthfulNoisy {
  double sigma = 0.0;
};

// Exponential weights over the bid grid with full-information feedback.
// Unset rate means sqrt(ln |B| / T).
struct Hedge {
  std::optional<double> eta;
};

// With probability epsilon a uniform grid bid, otherwise the grid bid with
// the highest cumulative counterfactual utility (lowest bid on ties).
struct EpsGreedy {
  double epsilon = 0.1;
};

// Bids v (1 + slope r) + N(0, sigma^2), clamped, where
// r = (modal rank so far - 1) / (n - 1). Low-ranked bidders overbid most.
struct BiasedOverbidder {
  double slope = 0.4;
  double sigma = 0.0;
};

// Plays back a fixed bid list.
struct Replay {
  std::vector<double> bids;
};

using AgentKind =
    std::variant<TruthfulNoisy, Hedge, EpsGreedy, BiasedOverbidder, Replay>;

struct AgentSpec {
  AgentKind kind;
  double value = 0.0;
};

// Throws Error(kInvalidArgument) on out-of-range parameters.
void ValidateAgentSpec(const AgentSpec& spec);
std::string AgentKindName(const AgentKind& kind);

// (21, 27, 33, 39, 45).
std::vector<double> DefaultValues();

// sqrt(ln(grid_size) / rounds).
double DefaultHedgeRate(int grid_size, int rounds);

// Per-agent seed derived from the session seed and the agent index, so adding
// an agent leaves the other agents' random streams unchanged.
std::uint64_t DeriveAgentSeed(std::uint64_t session_seed, int agent_index);

// One bidder's policy and private state.
class Agent {
 public:
  Agent(AgentSpec spec, int index, int bidders, int rounds, const Grid& grid,
        std::uint64_t seed);

  // Bid for the next auction, given everything observed so far.
  double Bid();

  // Feedback after an auction: the full profile and this agent's slot.
  void Observe(std::span<const double> profile, int position,
               const AuctionRules& rules);

  // Current sampling distribution over the grid (Hedge only; empty otherwise).
  std::vector<double> Distribution() const;

  const AgentSpec& spec() const { return spec_; }
  double value() const { return spec_.value; }
  // Most frequent slot so far, better slot on ties; 0 before any auction.
  int ModalRank() const;

 private:
  bool Learns() const;

  AgentSpec spec_;
  int index_;
  int bidders_;
  Grid grid_;
  double eta_ = 0.0;
  std::mt19937_64 rng_;
  // Cumulative counterfactual utility of each fixed grid bid.
  std::vector<double> cumulative_;
  std::vector<int> rank_counts_;
  std::size_t replay_cursor_ = 0;
};

struct SessionConfig {
  AuctionRules rules;
  int rounds = 1500;
  std::vector<AgentSpec> agents;
  Grid bids = Grid::Default();
  std::uint64_t seed = 0;
};

// Default parameters with one agent of `kind` per default value.
SessionConfig DefaultSession(Mechanism mechanism, const AgentKind& kind,
                             std::uint64_t seed);

struct SessionResult {
  BidSequence bids;
  std::vector<AuctionOutcome> outcomes;
  std::vector<double> values;
};

// Plays `rounds` auctions. Every agent bids on the history through the
// previous round; draws happen in agent order. Same config, same output.
SessionResult RunSession(const SessionConfig& config);

}  // namespace adregret

#endif  // ADREGRET_BIDDER_SIM_H_
