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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "adregret/equilibrium.h"
#include "adregret/error.h"

namespace adregret {
namespace {

constexpr double kFeasibilityTolerance = 1e-10;

void CheckSorted(std::span<const double> sorted_bids, const CtrProfile& ctrs) {
  if (static_cast<int>(sorted_bids.size()) != ctrs.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "bid count differs from the number of slots");
  }
  ValidateBids(sorted_bids);
  for (std::size_t k = 1; k < sorted_bids.size(); ++k) {
    if (sorted_bids[k] > sorted_bids[k - 1]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "ICC needs bids sorted in decreasing order");
    }
  }
}

// 1-based accessors with b_(n+1) = 0.
struct Ranked {
  std::span<const double> bids;
  const CtrProfile& ctrs;

  int n() const { return static_cast<int>(bids.size()); }
  double bid(int k) const { return k <= n() ? bids[k - 1] : 0.0; }
  double gap(int k) const { return ctrs.rate(k - 1) - ctrs.rate(k); }
  // Value of position k (>= 2) with the next bid scaled by `d`.
  double Icc(int k, double d) const {
    const double next = k < n() ? ctrs.rate(k) * bid(k + 1) * d : 0.0;
    return (ctrs.rate(k - 1) * bid(k) - next) / gap(k);
  }
};

}  // namespace

bool IccProfile::ChainConsistent(double tolerance) const {
  for (std::size_t k = 2; k < values.size(); ++k) {
    if (values[k] > values[k - 1] + tolerance) return false;
  }
  return true;
}

IccProfile IccValues(std::span<const double> sorted_bids,
                     const CtrProfile& ctrs) {
  CheckSorted(sorted_bids, ctrs);
  const Ranked r{sorted_bids, ctrs};
  IccProfile icc;
  icc.values.assign(r.n(), std::numeric_limits<double>::infinity());
  for (int k = 2; k <= r.n(); ++k) icc.values[k - 1] = r.Icc(k, 1.0);
  return icc;
}

IccProfile PerturbedIccValues(std::span<const double> sorted_bids,
                              const CtrProfile& ctrs,
                              std::span<const double> factors) {
  CheckSorted(sorted_bids, ctrs);
  if (factors.size() != sorted_bids.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "need one perturbation factor per position");
  }
  const Ranked r{sorted_bids, ctrs};
  IccProfile icc;
  icc.values.assign(r.n(), std::numeric_limits<double>::infinity());
  for (int k = 2; k <= r.n(); ++k) {
    icc.values[k - 1] = r.Icc(k, k < r.n() ? factors[k - 1] : 1.0);
  }
  return icc;
}

double PerturbationResult::MeanAbsDeviation() const {
  double total = 0.0;
  for (double d : factors) total += std::abs(d - 1.0);
  return total / static_cast<double>(factors.size());
}

PerturbationResult MinimalPerturbations(std::span<const double> sorted_bids,
                                        const CtrProfile& ctrs) {
  CheckSorted(sorted_bids, ctrs);
  const Ranked r{sorted_bids, ctrs};
  const int n = r.n();
  PerturbationResult result;
  result.factors.assign(n, 1.0);
  const int m = n - 2;  // free factors d_2 .. d_(n-1)
  if (m <= 0) return result;

  // Constraint for position i in 2..n-1: value(i) >= value(i+1), written as
  // G x <= h with x_j = d_(j+2).
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd h(m);
  for (int i = 2; i <= n - 1; ++i) {
    const int row = i - 2;
    g(row, i - 2) = ctrs.rate(i) * r.bid(i + 1) / r.gap(i);
    if (i + 1 <= n - 1) {
      g(row, i - 1) = -ctrs.rate(i + 1) * r.bid(i + 2) / r.gap(i + 1);
    }
    h(row) = ctrs.rate(i - 1) * r.bid(i) / r.gap(i) -
             ctrs.rate(i) * r.bid(i + 1) / r.gap(i + 1);
  }

  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m);
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_x = ones;

  // The optimum is the projection of 1 onto the affine hull of its active
  // constraints, so scanning every active set and keeping the best feasible
  // projection is exact.
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> active;
    for (int j = 0; j < m; ++j) {
      if (mask & (1u << j)) active.push_back(j);
    }
    Eigen::VectorXd x = ones;
    if (!active.empty()) {
      const int a = static_cast<int>(active.size());
      Eigen::MatrixXd ga(a, m);
      Eigen::VectorXd rhs(a);
      for (int k = 0; k < a; ++k) {
        ga.row(k) = g.row(active[k]);
        rhs(k) = h(active[k]) - g.row(active[k]).dot(ones);
      }
      const Eigen::VectorXd step = ga.completeOrthogonalDecomposition().solve(rhs);
      if ((ga * step - rhs).norm() > 1e-9 * (1.0 + rhs.norm())) continue;
      x += step;
    }
    const Eigen::VectorXd slack = g * x - h;
    if (slack.maxCoeff() > kFeasibilityTolerance) continue;
    if (x.minCoeff() <= 0.0) continue;
    const double objective = (x - ones).squaredNorm();
    if (objective < best) {
      best = objective;
      best_x = x;
    }
  }

  if (!std::isfinite(best)) {
    result.feasible = false;
    return result;
  }
  for (int j = 0; j < m; ++j) result.factors[j + 1] = best_x(j);
  result.objective = best;
  return result;
}

}  // namespace adregret
