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

#include "ttc/welfare.hpp"

#include <cmath>
#include <exception>
#include <limits>

#include "ttc/errors.hpp"

namespace ttc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_equilibrium(const GameInstance& game,
                         const StrategyProfile& profile) {
  const auto w = is_nash(game, profile);
  if (!w.is_equilibrium) {
    throw InvalidArgument("profile " + to_string(profile) +
                          " is not a Nash equilibrium: provider " +
                          std::to_string(*w.violating_provider) +
                          " improves by moving to level " +
                          std::to_string(*w.improving_level));
  }
}

struct Leader {
  std::size_t provider = 0;
  Usd gap = kInf;  // value gap to the next-best offer
};

Leader value_leader(const GameInstance& game, const StrategyProfile& profile) {
  const auto values = game.offered_values(profile);
  Leader out;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[out.provider]) out.provider = i;
  }
  double second = -kInf;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != out.provider) second = std::max(second, values[i]);
  }
  if (game.abstention().enabled()) {
    second = std::max(second, game.abstention().v0());
  }
  out.gap = values[out.provider] - second;
  if (!(out.gap > 0.0)) {
    throw DomainError("tie for the highest offered value at " +
                      to_string(profile));
  }
  return out;
}

}  // namespace

PoAReport price_of_anarchy(const GameInstance& game,
                           const StrategyProfile& equilibrium,
                           const ScanOptions& options) {
  require_equilibrium(game, equilibrium);
  return price_of_anarchy(game, equilibrium, max_social_welfare(game, options));
}

PoAReport price_of_anarchy(const GameInstance& game,
                           const StrategyProfile& equilibrium,
                           const WelfareOptimum& optimum) {
  require_equilibrium(game, equilibrium);
  PoAReport out;
  out.equilibrium = equilibrium;
  out.welfare_at_equilibrium = social_welfare(game, equilibrium);
  if (!(out.welfare_at_equilibrium > 0.0)) {
    throw DomainError("equilibrium welfare is not positive");
  }
  out.max_welfare = optimum.welfare;
  out.welfare_maximizer = optimum.profile;
  out.poa = out.max_welfare / out.welfare_at_equilibrium;
  return out;
}

BoundReport leading_poa_bound(const GameInstance& game,
                              const StrategyProfile& equilibrium) {
  require_equilibrium(game, equilibrium);
  BoundReport out;
  out.welfare_optimal_profile.levels.resize(game.num_providers());
  for (std::size_t i = 0; i < game.num_providers(); ++i) {
    out.welfare_optimal_profile[i] =
        welfare_optimal_level(game.provider(i)).level;
  }
  const auto at_opt = value_leader(game, out.welfare_optimal_profile);
  const auto at_eq = value_leader(game, equilibrium);
  out.leader_at_optimum = at_opt.provider;
  out.leader_at_equilibrium = at_eq.provider;
  out.w_star = game.welfare(at_opt.provider)
                   [out.welfare_optimal_profile[at_opt.provider]];
  if (!(out.w_star > 0.0)) {
    throw DomainError("welfare contribution of the optimal leader is not "
                      "positive");
  }
  out.delta_sw =
      out.w_star - game.welfare(at_eq.provider)[equilibrium[at_eq.provider]];
  out.delta_v = std::min(at_opt.gap, at_eq.gap);
  out.leading_bound = 1.0 + out.delta_sw / out.w_star;
  return out;
}

std::vector<SweepPoint> beta_sweep(const GameInstance& game,
                                   std::span<const double> betas,
                                   const DynamicsConfig& config) {
  std::vector<GameInstance> games;
  games.reserve(betas.size());
  for (const double beta : betas) {
    if (std::isnan(beta) || !(beta > 0.0)) {
      throw InvalidArgument("beta must be positive, got " +
                            std::to_string(beta));
    }
    games.push_back(game.with_rationality(
        std::isinf(beta) ? Rationality::perfect() : Rationality::finite(beta)));
  }

  const auto count = static_cast<std::int64_t>(betas.size());
  std::vector<SweepPoint> out(betas.size());
  std::vector<std::exception_ptr> failures(betas.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t b = 0; b < count; ++b) {
    try {
      const auto trace = run(games[b], config);
      SweepPoint& p = out[b];
      p.beta = betas[b];
      p.converged = trace.converged;
      p.iterations = trace.steps.size() - 1;
      p.inefficiency = std::numeric_limits<double>::quiet_NaN();
      if (trace.converged) {
        p.equilibrium = trace.equilibrium;
        p.inefficiency = trace.steps.back().inefficiency;
      }
    } catch (...) {
      failures[b] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return out;
}

}  // namespace ttc
