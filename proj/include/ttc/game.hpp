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

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ttc/market_share.hpp"
#include "ttc/provider.hpp"

namespace ttc {

// One compute-level ordinal per provider.
struct StrategyProfile {
  std::vector<Level> levels;

  std::size_t size() const noexcept { return levels.size(); }
  Level operator[](std::size_t i) const { return levels[i]; }
  Level& operator[](std::size_t i) { return levels[i]; }

  friend auto operator<=>(const StrategyProfile&,
                          const StrategyProfile&) = default;
};

std::string to_string(const StrategyProfile& profile);

// Normal-form game between providers competing on compute level.
//
// Construction validates every provider profile in the given mode and throws
// InvalidArgument listing the hard errors. Soft findings, including
// cross-provider value ties, are kept in warnings().
class GameInstance {
 public:
  GameInstance(std::vector<ProviderProfile> providers,
               AbstentionPolicy abstention, Rationality rationality,
               ValidationMode mode = ValidationMode::kStrict);

  std::size_t num_providers() const noexcept { return providers_.size(); }
  const std::vector<ProviderProfile>& providers() const noexcept {
    return providers_;
  }
  const ProviderProfile& provider(std::size_t i) const;
  const AbstentionPolicy& abstention() const noexcept { return abstention_; }
  const Rationality& rationality() const noexcept { return rationality_; }
  ValidationMode validation_mode() const noexcept { return mode_; }
  const std::vector<Finding>& warnings() const noexcept { return warnings_; }

  GameInstance with_rationality(Rationality rationality) const;
  GameInstance with_abstention(AbstentionPolicy abstention) const;

  // Per-(provider, level) tables, precomputed at construction.
  std::span<const Usd> values(std::size_t i) const { return values_.at(i); }
  std::span<const Usd> profits(std::size_t i) const { return profits_.at(i); }
  std::span<const Usd> welfare(std::size_t i) const { return welfare_.at(i); }

  // |Theta_1| * ... * |Theta_N|, saturating at UINT64_MAX.
  std::uint64_t num_profiles() const noexcept;

  // Throws InvalidArgument unless the profile has one valid ordinal per
  // provider.
  void check(const StrategyProfile& profile) const;

  // Offered values V_i(theta_i) for every provider.
  std::vector<Usd> offered_values(const StrategyProfile& profile) const;

 private:
  std::vector<ProviderProfile> providers_;
  AbstentionPolicy abstention_;
  Rationality rationality_;
  ValidationMode mode_;
  std::vector<Finding> warnings_;
  std::vector<std::vector<Usd>> values_;
  std::vector<std::vector<Usd>> profits_;
  std::vector<std::vector<Usd>> welfare_;
};

// A deviation counts as an improvement only above this margin.
inline constexpr double kImprovementThreshold = 1e-12;

ShareVector profile_shares(const GameInstance& game,
                           const StrategyProfile& profile);

// share_i * (p_i - c_i).
Usd utility(const GameInstance& game, const StrategyProfile& profile,
            std::size_t i);

// Utility of provider i if it alone switched to `level`.
Usd deviation_utility(const GameInstance& game, const StrategyProfile& profile,
                      std::size_t i, Level level);

// Share-weighted (q - c) plus V0 times the abstention share.
Usd social_welfare(const GameInstance& game, const StrategyProfile& profile);

namespace detail {

// Welfare for the profile given by `levels`, using caller-provided scratch
// of N entries each. social_welfare() and the scan kernels share it so that
// both produce bit-identical results.
Usd welfare_at(const GameInstance& game, std::span<const Level> levels,
               std::span<Usd> values, std::span<double> share);

}  // namespace detail

struct BestResponse {
  Level level = 0;
  Usd utility = 0.0;
};

// Utility-maximizing level for provider i against the others' levels; the
// lowest ordinal wins exact ties.
BestResponse best_response(const GameInstance& game,
                           const StrategyProfile& profile, std::size_t i);

// Constants of the perfect-rationality potential.
struct PotentialConfig {
  Usd u_max = 0.0;      // largest per-level profit
  Usd u_min = 0.0;      // smallest per-level profit
  Usd delta_min = 0.0;  // smallest cross-provider value gap
  double c = 1.0;       // weight on the runner-up value
};

// u_max, u_min and delta_min scanned from the game, and
//   C = max(log u_max - log u_min, 0) / delta_min + 1.
// For one provider, delta_min is taken against V0 when abstention is
// enabled and is +inf otherwise. Throws DomainError on a cross-provider
// value tie.
PotentialConfig default_potential_config(const GameInstance& game);

// Generalized ordinal potential.
//
// Perfect: log(profit of the value leader) + C * (runner-up value), where
// the runner-up is V0 (abstention enabled) or 0 for a single provider.
// Finite: sum_i log(profit_i) + beta * sum_i V_i
//         - log(exp(beta V0) + sum_i exp(beta V_i)).
//
// `config` is required for perfect rationality and ignored otherwise.
// Throws DomainError on a non-positive profit that enters a logarithm.
double potential(const GameInstance& game, const StrategyProfile& profile,
                 const std::optional<PotentialConfig>& config = std::nullopt);

struct EquilibriumWitness {
  StrategyProfile profile;
  bool is_equilibrium = true;
  std::optional<std::size_t> violating_provider;
  std::optional<Level> improving_level;
};

// Checks every unilateral deviation, providers ascending then ordinals
// ascending, and reports the first strict improvement.
EquilibriumWitness is_nash(const GameInstance& game,
                           const StrategyProfile& profile);

// Equilibrium shape predicted under perfect rationality by the dominant
// provider argument: the provider with the largest attainable value serves
// everyone at the highest level whose value still beats every competitor's
// best attainable value.
struct DominantPrediction {
  std::size_t provider = 0;
  Level level = 0;
  Usd best_value = 0.0;       // V* of the dominant provider
  Usd runner_up_value = 0.0;  // second-largest V* (or V0 if higher)
  // Largest dominant-provider value below runner_up_value among levels with
  // more profit than `level`; -inf when there is none. Some competitor must
  // offer more than this at any equilibrium.
  Usd blocking_value = 0.0;
};

// Requires perfect rationality and N >= 2. Throws DomainError if the two
// largest attainable values tie or no level beats the runner-up.
DominantPrediction rational_equilibrium_prediction(const GameInstance& game);

// True if some provider other than the dominant one offers strictly more
// than prediction.blocking_value at `profile`.
bool competitor_blocks(const GameInstance& game,
                       const StrategyProfile& profile,
                       const DominantPrediction& prediction);

}  // namespace ttc
