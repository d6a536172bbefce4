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

#include <cstdint>
#include <optional>
#include <vector>

#include "ttc/game.hpp"
#include "ttc/kernels.hpp"
#include "ttc/rng.hpp"

namespace ttc {

enum class DynamicsMode {
  // Move the selected provider one ordinal toward its best response.
  kPaperStep,
  // Move the selected provider straight to its best response.
  kStrictBestResponse,
};

struct DynamicsConfig {
  DynamicsMode mode = DynamicsMode::kPaperStep;
  std::uint64_t seed = 0;
  std::size_t max_iterations = 10'000;
  // Used for the perfect-rationality potential; defaults to
  // default_potential_config(game) when absent.
  std::optional<PotentialConfig> potential_config;
  ScanOptions scan;
};

// State at time t. `mover` is the provider selected to move from this
// profile to the next one; it is absent on the final step.
struct DynamicsStep {
  std::size_t t = 0;
  std::optional<std::size_t> mover;
  StrategyProfile profile;
  ShareVector shares;
  std::vector<Usd> utilities;
  double potential = 0.0;  // NaN when undefined for the instance
  Usd welfare = 0.0;
  double inefficiency = 0.0;  // max welfare / welfare - 1; +inf if welfare <= 0
};

struct DynamicsTrace {
  std::vector<DynamicsStep> steps;
  bool converged = false;
  std::optional<StrategyProfile> equilibrium;
  WelfareOptimum optimum;
};

// Every provider at its lowest compute level.
StrategyProfile initial_profile(const GameInstance& game);

// Providers whose best response beats their current utility by more than
// kImprovementThreshold, ascending.
std::vector<std::size_t> unsatisfied_providers(const GameInstance& game,
                                               const StrategyProfile& profile);

struct Move {
  std::size_t mover = 0;
  StrategyProfile profile;
};

// One better-response update: pick an unsatisfied provider uniformly with
// `rng` and move it according to `mode`. Returns nullopt at an equilibrium
// (and then draws nothing from `rng`).
std::optional<Move> step(const GameInstance& game,
                         const StrategyProfile& profile, DynamicsMode mode,
                         SplitMix64& rng);

// Runs from initial_profile() until no provider can improve or
// max_iterations moves have been made. Deterministic for a fixed config.
// Throws InvalidArgument if max_iterations is 0 and propagates
// BudgetExceeded from the welfare scan.
DynamicsTrace run(const GameInstance& game, const DynamicsConfig& config);

double inefficiency(Usd max_welfare, Usd welfare);

}  // namespace ttc
