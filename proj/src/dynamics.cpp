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

#include "ttc/dynamics.hpp"

#include <cmath>
#include <limits>

#include "ttc/errors.hpp"

namespace ttc {

StrategyProfile initial_profile(const GameInstance& game) {
  return StrategyProfile{std::vector<Level>(game.num_providers(), 0)};
}

std::vector<std::size_t> unsatisfied_providers(const GameInstance& game,
                                               const StrategyProfile& profile) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < game.num_providers(); ++i) {
    const auto best = best_response(game, profile, i);
    if (best.utility > utility(game, profile, i) + kImprovementThreshold) {
      out.push_back(i);
    }
  }
  return out;
}

std::optional<Move> step(const GameInstance& game,
                         const StrategyProfile& profile, DynamicsMode mode,
                         SplitMix64& rng) {
  const auto candidates = unsatisfied_providers(game, profile);
  if (candidates.empty()) return std::nullopt;

  Move move;
  move.mover = candidates[rng.below(candidates.size())];
  move.profile = profile;
  const Level target = best_response(game, profile, move.mover).level;
  Level& level = move.profile[move.mover];
  if (mode == DynamicsMode::kStrictBestResponse) {
    level = target;
  } else if (level < target) {
    ++level;
  } else if (level > target) {
    --level;
  }
  return move;
}

double inefficiency(Usd max_welfare, Usd welfare) {
  if (!(welfare > 0.0)) return std::numeric_limits<double>::infinity();
  return max_welfare / welfare - 1.0;
}

DynamicsTrace run(const GameInstance& game, const DynamicsConfig& config) {
  if (config.max_iterations == 0) {
    throw InvalidArgument("max_iterations must be at least 1");
  }
  DynamicsTrace trace;
  trace.optimum = max_social_welfare(game, config.scan);

  std::optional<PotentialConfig> potential_config = config.potential_config;
  bool potential_defined = true;
  if (game.rationality().is_perfect() && !potential_config) {
    try {
      potential_config = default_potential_config(game);
    } catch (const DomainError&) {
      potential_defined = false;
    }
  }

  SplitMix64 rng(config.seed);
  StrategyProfile profile = initial_profile(game);
  for (std::size_t t = 0;; ++t) {
    DynamicsStep s;
    s.t = t;
    s.profile = profile;
    s.shares = profile_shares(game, profile);
    for (std::size_t i = 0; i < game.num_providers(); ++i) {
      s.utilities.push_back(s.shares.provider_shares[i] *
                            game.profits(i)[profile[i]]);
    }
    s.potential = potential_defined
                      ? potential(game, profile, potential_config)
                      : std::numeric_limits<double>::quiet_NaN();
    s.welfare = social_welfare(game, profile);
    s.inefficiency = inefficiency(trace.optimum.welfare, s.welfare);
    trace.steps.push_back(std::move(s));

    if (unsatisfied_providers(game, profile).empty()) {
      trace.converged = true;
      trace.equilibrium = profile;
      break;
    }
    if (t == config.max_iterations) break;
    auto move = step(game, profile, config.mode, rng);
    trace.steps.back().mover = move->mover;
    profile = std::move(move->profile);
  }
  return trace;
}

}  // namespace ttc
