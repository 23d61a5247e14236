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

// Reference implementations used only by tests. They share no code with the
// library: ranking is done by counting, prices by walking the ranked list,
// and searches are exhaustive.

#ifndef ADREGRET_TESTS_ORACLES_H_
#define ADREGRET_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

struct Slot {
  int position = 0;
  double ctr = 0.0;
  double payment = 0.0;
};

// Slot of `bidder` when it bids `bid` against the other entries of
// `profile`. gsp = true for next-price, false for VCG.
inline Slot Place(bool gsp, const std::vector<double>& alpha,
                  const std::vector<double>& profile, int bidder, double bid) {
  const int n = static_cast<int>(profile.size());
  std::vector<double> b = profile;
  b[bidder] = bid;
  // rank of each bidder: number of bidders strictly ahead of it.
  auto ahead = [&](int j, int i) {
    return b[j] > b[i] || (b[j] == b[i] && j < i);
  };
  std::vector<double> ranked(n);
  for (int i = 0; i < n; ++i) {
    int r = 0;
    for (int j = 0; j < n; ++j) r += (j != i && ahead(j, i)) ? 1 : 0;
    ranked[r] = b[i];
  }
  int k = 0;
  for (int j = 0; j < n; ++j) k += (j != bidder && ahead(j, bidder)) ? 1 : 0;
  Slot s;
  s.position = k + 1;
  s.ctr = alpha[k];
  if (k + 1 < n) {
    if (gsp) {
      s.payment = alpha[k] * ranked[k + 1];
    } else {
      for (int j = k + 1; j < n; ++j) {
        s.payment += ranked[j] * (alpha[j - 1] - alpha[j]);
      }
    }
  }
  return s;
}

inline double Utility(bool gsp, const std::vector<double>& alpha,
                      const std::vector<double>& profile, int bidder,
                      double bid, double value) {
  const Slot s = Place(gsp, alpha, profile, bidder, bid);
  return s.ctr * value - s.payment;
}

struct Regret {
  double actual = 0.0;
  double opt = -std::numeric_limits<double>::infinity();
  double regret = 0.0;
};

// Plain double loop over auctions t in [first, last] (1-based), summed in
// time order.
inline Regret RegretAt(bool gsp, const std::vector<double>& alpha,
                       const std::vector<std::vector<double>>& log, int bidder,
                       double value, int first, int last,
                       const std::vector<double>& grid) {
  Regret r;
  for (int t = first; t <= last; ++t) {
    const auto& p = log[t - 1];
    r.actual += Utility(gsp, alpha, p, bidder, p[bidder], value);
  }
  for (double b : grid) {
    double sum = 0.0;
    for (int t = first; t <= last; ++t) {
      sum += Utility(gsp, alpha, log[t - 1], bidder, b, value);
    }
    r.opt = std::max(r.opt, sum);
  }
  r.regret = r.opt - r.actual;
  return r;
}

// v_k after scaling b_(k+1) by d, for 1-based position k >= 2; b_(n+1) = 0.
inline double PerturbedValue(const std::vector<double>& b,
                             const std::vector<double>& alpha, int k,
                             double d) {
  const double next = k < static_cast<int>(b.size()) ? b[k] : 0.0;
  return (alpha[k - 2] * b[k - 1] - alpha[k - 1] * d * next) /
         (alpha[k - 2] - alpha[k - 1]);
}

// Five-bid minimal perturbation. For fixed d3 the best d2 and d4 are found by
// exhaustive scan over the same grid, so this is the full brute force over
// [0.5, 1.5]^3 with step 1e-3 (the objective is separable and d2, d4 do not
// interact).
inline double GridPerturbationObjective(const std::vector<double>& b,
                                        const std::vector<double>& alpha) {
  double best = std::numeric_limits<double>::infinity();
  const double v5 = PerturbedValue(b, alpha, 5, 1.0);
  std::vector<double> grid(1001);
  for (int i = 0; i <= 1000; ++i) grid[i] = 0.5 + i * 1e-3;
  for (double d3 : grid) {
    const double v3 = PerturbedValue(b, alpha, 3, d3);
    double c2 = std::numeric_limits<double>::infinity();
    double c4 = c2;
    for (double d : grid) {
      if (PerturbedValue(b, alpha, 2, d) >= v3) c2 = std::min(c2, (d - 1) * (d - 1));
      const double v4 = PerturbedValue(b, alpha, 4, d);
      if (v4 <= v3 && v4 >= v5) c4 = std::min(c4, (d - 1) * (d - 1));
    }
    best = std::min(best, c2 + (d3 - 1) * (d3 - 1) + c4);
  }
  return best;
}

// Same problem with the grid error removed: for fixed d3 the feasible d2 and
// d4 are intervals, so the nearest point to 1 is taken exactly; the reduced
// objective is convex in d3, scanned at 1e-3 and then at 1e-7 around the
// best coarse point. Returns +inf if nothing in the box is feasible.
inline double RefinedPerturbationObjective(const std::vector<double>& b,
                                           const std::vector<double>& alpha) {
  const double v5 = PerturbedValue(b, alpha, 5, 1.0);
  auto reduced = [&](double d3) {
    const double v3 = PerturbedValue(b, alpha, 3, d3);
    // v_k(d) = base_k - slope_k d, slope_k >= 0.
    auto base = [&](int k) { return PerturbedValue(b, alpha, k, 0.0); };
    auto slope = [&](int k) { return base(k) - PerturbedValue(b, alpha, k, 1.0); };
    double lo2 = 0.5, hi2 = 1.5, lo4 = 0.5, hi4 = 1.5;
    // v2(d2) >= v3  ->  slope2 d2 <= base2 - v3
    if (slope(2) > 0) {
      hi2 = std::min(hi2, (base(2) - v3) / slope(2));
    } else if (base(2) < v3) {
      return std::numeric_limits<double>::infinity();
    }
    // v5 <= v4(d4) <= v3
    if (slope(4) > 0) {
      lo4 = std::max(lo4, (base(4) - v3) / slope(4));
      hi4 = std::min(hi4, (base(4) - v5) / slope(4));
    } else if (base(4) > v3 || base(4) < v5) {
      return std::numeric_limits<double>::infinity();
    }
    if (lo2 > hi2 || lo4 > hi4) return std::numeric_limits<double>::infinity();
    const double d2 = std::clamp(1.0, lo2, hi2);
    const double d4 = std::clamp(1.0, lo4, hi4);
    return (d2 - 1) * (d2 - 1) + (d3 - 1) * (d3 - 1) + (d4 - 1) * (d4 - 1);
  };
  double best = std::numeric_limits<double>::infinity();
  double best_d3 = 1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double d3 = 0.5 + i * 1e-3;
    const double f = reduced(d3);
    if (f < best) {
      best = f;
      best_d3 = d3;
    }
  }
  for (int i = -10000; i <= 10000; ++i) {
    const double d3 = best_d3 + i * 1e-7;
    if (d3 < 0.5 || d3 > 1.5) continue;
    best = std::min(best, reduced(d3));
  }
  return best;
}

// Welfare sum_i alpha_pos(i) v_i over every permutation of positions.
inline std::vector<double> AllPermutationWelfare(
    const std::vector<double>& alpha, const std::vector<double>& values) {
  std::vector<int> pos(values.size());
  std::iota(pos.begin(), pos.end(), 0);
  std::vector<double> out;
  do {
    double w = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) w += alpha[pos[i]] * values[i];
    out.push_back(w);
  } while (std::next_permutation(pos.begin(), pos.end()));
  return out;
}

inline std::vector<std::vector<double>> RandomLog(std::mt19937_64& rng, int t,
                                                  int n, double hi = 60.0,
                                                  bool integer = false) {
  std::uniform_real_distribution<double> u(0.0, hi);
  std::vector<std::vector<double>> log(t, std::vector<double>(n));
  for (auto& p : log) {
    for (double& x : p) x = integer ? std::floor(u(rng)) + 1.0 : u(rng);
  }
  return log;
}

}  // namespace oracle

#endif  // ADREGRET_TESTS_ORACLES_H_
