// Copyright 2026 The ttcmarket Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ttc/dynamics.hpp"
#include "ttc/game.hpp"
#include "ttc/kernels.hpp"

namespace ttc {

struct PoAReport {
  double poa = 1.0;
  Usd welfare_at_equilibrium = 0.0;
  Usd max_welfare = 0.0;
  StrategyProfile welfare_maximizer;
  StrategyProfile equilibrium;
};

// Exact price of anarchy max_theta SW(theta) / SW(equilibrium), with the
// maximum found by exhaustive scan.
//
// Throws InvalidArgument if `equilibrium` is not a Nash equilibrium and
// DomainError if its welfare is not positive.
PoAReport price_of_anarchy(const GameInstance& game,
                           const StrategyProfile& equilibrium,
                           const ScanOptions& options = {});

// Same, reusing an optimum computed earlier for this game.
PoAReport price_of_anarchy(const GameInstance& game,
                           const StrategyProfile& equilibrium,
                           const WelfareOptimum& optimum);

// Leading-order lower bound on the price of anarchy,
//   1 + (W* - W_lead(eq)) / W*,
// where W* is the welfare contribution of the value leader when every
// provider plays its welfare-optimal level, and W_lead(eq) is the
// contribution of the value leader at the equilibrium. The gap between the
// two best offers (delta_v, the smaller of the two profiles' gaps; V0
// counts as an offer when enabled) sets the size of the neglected
// exp(-beta * delta_v) terms.
struct BoundReport {
  double leading_bound = 1.0;
  Usd delta_sw = 0.0;
  Usd w_star = 0.0;
  Usd delta_v = 0.0;
  StrategyProfile welfare_optimal_profile;
  std::size_t leader_at_optimum = 0;
  std::size_t leader_at_equilibrium = 0;
};

// Throws InvalidArgument if `equilibrium` is not a Nash equilibrium and
// DomainError on a tie for the lead or a non-positive W*.
BoundReport leading_poa_bound(const GameInstance& game,
                              const StrategyProfile& equilibrium);

struct SweepPoint {
  double beta = 0.0;  // +inf for perfect rationality
  bool converged = false;
  std::size_t iterations = 0;
  double inefficiency = 0.0;  // PoA - 1 at the endpoint; NaN if not converged
  std::optional<StrategyProfile> equilibrium;
};

// Runs the dynamics at each beta (+inf selects perfect rationality) and
// reports the inefficiency of the endpoint. Entries are independent and run
// in parallel; the output follows the input order. Throws InvalidArgument
// on a non-positive or NaN beta.
std::vector<SweepPoint> beta_sweep(const GameInstance& game,
                                   std::span<const double> betas,
                                   const DynamicsConfig& config);

}  // namespace ttc
