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

#include "adregret/bidder_sim.h"

#include <algorithm>
#include <cmath>

#include "adregret/error.h"

namespace adregret {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void ValidateAgentSpec(const AgentSpec& spec) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, what);
  };
  if (!(spec.value > 0.0)) fail("agent value must be positive");
  std::visit(Overloaded{
                 [&](const TruthfulNoisy& a) {
                   if (!(a.sigma >= 0.0)) fail("sigma must be >= 0");
                 },
                 [&](const Hedge& a) {
                   if (a.eta && !(*a.eta > 0.0)) fail("eta must be > 0");
                 },
                 [&](const EpsGreedy& a) {
                   if (!(a.epsilon >= 0.0 && a.epsilon <= 1.0)) {
                     fail("epsilon must lie in [0, 1]");
                   }
                 },
                 [&](const BiasedOverbidder& a) {
                   if (!(a.slope >= 0.0)) fail("overbid slope must be >= 0");
                   if (!(a.sigma >= 0.0)) fail("sigma must be >= 0");
                 },
                 [&](const Replay&) {},
             },
             spec.kind);
}

std::string AgentKindName(const AgentKind& kind) {
  return std::visit(Overloaded{
                        [](const TruthfulNoisy&) { return "truthful-noisy"; },
                        [](const Hedge&) { return "hedge"; },
                        [](const EpsGreedy&) { return "eps-greedy"; },
                        [](const BiasedOverbidder&) { return "biased"; },
                        [](const Replay&) { return "replay"; },
                    },
                    kind);
}

std::vector<double> DefaultValues() { return {21, 27, 33, 39, 45}; }

double DefaultHedgeRate(int grid_size, int rounds) {
  return std::sqrt(std::log(static_cast<double>(grid_size)) / rounds);
}

std::uint64_t DeriveAgentSeed(std::uint64_t session_seed, int agent_index) {
  return SplitMix64(SplitMix64(session_seed) ^
                    SplitMix64(static_cast<std::uint64_t>(agent_index) + 1));
}

Agent::Agent(AgentSpec spec, int index, int bidders, int rounds,
             const Grid& grid, std::uint64_t seed)
    : spec_(std::move(spec)),
      index_(index),
      bidders_(bidders),
      grid_(grid),
      rng_(seed),
      cumulative_(grid.size(), 0.0),
      rank_counts_(bidders, 0) {
  ValidateAgentSpec(spec_);
  if (const auto* h = std::get_if<Hedge>(&spec_.kind)) {
    eta_ = h->eta.value_or(DefaultHedgeRate(grid.size(), rounds));
  }
}

bool Agent::Learns() const {
  return std::holds_alternative<Hedge>(spec_.kind) ||
         std::holds_alternative<EpsGreedy>(spec_.kind);
}

int Agent::ModalRank() const {
  int best = 0;
  for (int k = 0; k < bidders_; ++k) {
    if (rank_counts_[k] > 0 &&
        (best == 0 || rank_counts_[k] > rank_counts_[best - 1])) {
      best = k + 1;
    }
  }
  return best;
}

std::vector<double> Agent::Distribution() const {
  if (!std::holds_alternative<Hedge>(spec_.kind)) return {};
  const double top = *std::max_element(cumulative_.begin(), cumulative_.end());
  std::vector<double> p(cumulative_.size());
  double total = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    p[k] = std::exp(eta_ * (cumulative_[k] - top));
    total += p[k];
  }
  for (double& x : p) x /= total;
  return p;
}

double Agent::Bid() {
  const double cap = grid_.max();
  auto clamp = [&](double b) { return std::clamp(b, 0.0, cap); };
  auto noise = [&](double sigma) {
    return sigma > 0.0 ? std::normal_distribution<double>(0.0, sigma)(rng_)
                       : 0.0;
  };
  return std::visit(
      Overloaded{
          [&](const TruthfulNoisy& a) {
            return clamp(spec_.value + noise(a.sigma));
          },
          [&](const Hedge&) {
            const std::vector<double> p = Distribution();
            double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
            for (std::size_t k = 0; k < p.size(); ++k) {
              u -= p[k];
              if (u < 0.0) return grid_[static_cast<int>(k)];
            }
            return grid_.max();
          },
          [&](const EpsGreedy& a) {
            const double u =
                std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
            if (u < a.epsilon) {
              std::uniform_int_distribution<int> pick(0, grid_.size() - 1);
              return grid_[pick(rng_)];
            }
            const auto it =
                std::max_element(cumulative_.begin(), cumulative_.end());
            return grid_[static_cast<int>(it - cumulative_.begin())];
          },
          [&](const BiasedOverbidder& a) {
            const int modal = ModalRank();
            const double r =
                modal == 0 ? 0.0
                           : static_cast<double>(modal - 1) / (bidders_ - 1);
            return clamp(spec_.value * (1.0 + a.slope * r) + noise(a.sigma));
          },
          [&](const Replay& a) {
            if (replay_cursor_ >= a.bids.size()) {
              throw Error(ErrorCode::kExhausted,
                          "replay source exhausted for bidder " +
                              std::to_string(index_));
            }
            return a.bids[replay_cursor_++];
          },
      },
      spec_.kind);
}

void Agent::Observe(std::span<const double> profile, int position,
                    const AuctionRules& rules) {
  ++rank_counts_[position - 1];
  if (!Learns()) return;
  const OpponentField field(profile, index_);
  for (int k = 0; k < grid_.size(); ++k) {
    cumulative_[k] += field.Place(grid_[k], rules).Utility(spec_.value);
  }
}

SessionConfig DefaultSession(Mechanism mechanism, const AgentKind& kind,
                             std::uint64_t seed) {
  SessionConfig config;
  config.rules.mechanism = mechanism;
  config.seed = seed;
  for (double v : DefaultValues()) config.agents.push_back({kind, v});
  return config;
}

SessionResult RunSession(const SessionConfig& config) {
  const int n = static_cast<int>(config.agents.size());
  if (n != config.rules.ctrs.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "need exactly one agent per slot");
  }
  if (config.rounds < 1) {
    throw Error(ErrorCode::kInvalidArgument, "rounds must be >= 1");
  }
  std::vector<Agent> agents;
  agents.reserve(n);
  SessionResult result;
  for (int i = 0; i < n; ++i) {
    agents.emplace_back(config.agents[i], i, n, config.rounds, config.bids,
                        DeriveAgentSeed(config.seed, i));
    result.values.push_back(config.agents[i].value);
  }

  std::vector<double> profile(n);
  result.outcomes.reserve(config.rounds);
  for (int t = 1; t <= config.rounds; ++t) {
    for (int i = 0; i < n; ++i) profile[i] = agents[i].Bid();
    AuctionOutcome outcome = Resolve(config.rules, profile, result.values);
    for (int i = 0; i < n; ++i) {
      agents[i].Observe(profile, outcome.positions[i], config.rules);
    }
    result.bids.Append(profile);
    result.outcomes.push_back(std::move(outcome));
  }
  return result;
}

}  // namespace adregret
