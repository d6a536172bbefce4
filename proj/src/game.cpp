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

#include "ttc/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ttc/errors.hpp"

namespace ttc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

std::string to_string(const StrategyProfile& profile) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i) os << ',';
    os << profile[i];
  }
  os << ')';
  return os.str();
}

GameInstance::GameInstance(std::vector<ProviderProfile> providers,
                           AbstentionPolicy abstention,
                           Rationality rationality, ValidationMode mode)
    : providers_(std::move(providers)),
      abstention_(abstention),
      rationality_(rationality),
      mode_(mode) {
  if (providers_.empty()) {
    throw InvalidArgument("a game needs at least one provider");
  }
  std::string errors;
  for (const auto& p : providers_) {
    for (auto& f : validate_profile(p, mode_)) {
      if (f.severity == Finding::Severity::kError) {
        errors += "\n  " + f.message;
      } else {
        warnings_.push_back(std::move(f));
      }
    }
  }
  if (!errors.empty()) {
    throw InvalidArgument("invalid provider profiles:" + errors);
  }

  const auto n = providers_.size();
  values_.resize(n);
  profits_.resize(n);
  welfare_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = providers_[i];
    for (Level k = 0; k < p.num_levels(); ++k) {
      values_[i].push_back(user_value(p, k));
      profits_[i].push_back(p.profit(k));
      welfare_[i].push_back(welfare_contribution(p, k));
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (Level a = 0; a < values_[i].size(); ++a) {
        for (Level b = 0; b < values_[j].size(); ++b) {
          if (values_[i][a] == values_[j][b]) {
            warnings_.push_back(
                {Finding::Severity::kWarning, std::nullopt,
                 "value tie between provider '" + providers_[i].id() +
                     "' level " + std::to_string(a) + " and provider '" +
                     providers_[j].id() + "' level " + std::to_string(b)});
          }
        }
      }
    }
  }
}

const ProviderProfile& GameInstance::provider(std::size_t i) const {
  if (i >= providers_.size()) {
    throw InvalidArgument("provider index " + std::to_string(i) +
                          " out of range");
  }
  return providers_[i];
}

GameInstance GameInstance::with_rationality(Rationality rationality) const {
  GameInstance copy = *this;
  copy.rationality_ = rationality;
  return copy;
}

GameInstance GameInstance::with_abstention(AbstentionPolicy abstention) const {
  GameInstance copy = *this;
  copy.abstention_ = abstention;
  return copy;
}

std::uint64_t GameInstance::num_profiles() const noexcept {
  std::uint64_t total = 1;
  for (const auto& p : providers_) {
    const std::uint64_t k = p.num_levels();
    if (k != 0 && total > std::numeric_limits<std::uint64_t>::max() / k) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= k;
  }
  return total;
}

void GameInstance::check(const StrategyProfile& profile) const {
  if (profile.size() != providers_.size()) {
    throw InvalidArgument("profile has " + std::to_string(profile.size()) +
                          " levels for " + std::to_string(providers_.size()) +
                          " providers");
  }
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i] >= providers_[i].num_levels()) {
      throw InvalidArgument("profile " + to_string(profile) +
                            ": provider " + std::to_string(i) +
                            " has no level " + std::to_string(profile[i]));
    }
  }
}

std::vector<Usd> GameInstance::offered_values(
    const StrategyProfile& profile) const {
  check(profile);
  std::vector<Usd> out(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out[i] = values_[i][profile[i]];
  }
  return out;
}

ShareVector profile_shares(const GameInstance& game,
                           const StrategyProfile& profile) {
  const auto values = game.offered_values(profile);
  return shares(values, game.abstention(), game.rationality());
}

Usd utility(const GameInstance& game, const StrategyProfile& profile,
            std::size_t i) {
  if (i >= game.num_providers()) {
    throw InvalidArgument("provider index " + std::to_string(i) +
                          " out of range");
  }
  const auto s = profile_shares(game, profile);
  return s.provider_shares[i] * game.profits(i)[profile[i]];
}

Usd deviation_utility(const GameInstance& game, const StrategyProfile& profile,
                      std::size_t i, Level level) {
  StrategyProfile moved = profile;
  moved.levels.at(i) = level;
  return utility(game, moved, i);
}

namespace detail {

Usd welfare_at(const GameInstance& game, std::span<const Level> levels,
               std::span<Usd> values, std::span<double> share) {
  const auto n = levels.size();
  for (std::size_t i = 0; i < n; ++i) values[i] = game.values(i)[levels[i]];
  const double abstain =
      fill_shares(values, game.abstention(), game.rationality(), share);
  Usd total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += share[i] * game.welfare(i)[levels[i]];
  }
  if (game.abstention().enabled()) total += game.abstention().v0() * abstain;
  return total;
}

}  // namespace detail

Usd social_welfare(const GameInstance& game, const StrategyProfile& profile) {
  game.check(profile);
  const auto n = profile.size();
  std::vector<Usd> values(n);
  std::vector<double> share(n);
  return detail::welfare_at(game, profile.levels, values, share);
}

BestResponse best_response(const GameInstance& game,
                           const StrategyProfile& profile, std::size_t i) {
  game.check(profile);
  BestResponse best{0, deviation_utility(game, profile, i, 0)};
  for (Level k = 1; k < game.provider(i).num_levels(); ++k) {
    const Usd u = deviation_utility(game, profile, i, k);
    if (u > best.utility) best = {k, u};
  }
  return best;
}

PotentialConfig default_potential_config(const GameInstance& game) {
  PotentialConfig cfg;
  cfg.u_max = -kInf;
  cfg.u_min = kInf;
  const auto n = game.num_providers();
  for (std::size_t i = 0; i < n; ++i) {
    for (const Usd p : game.profits(i)) {
      cfg.u_max = std::max(cfg.u_max, p);
      cfg.u_min = std::min(cfg.u_min, p);
    }
  }

  double gap = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (const Usd a : game.values(i)) {
        for (const Usd b : game.values(j)) gap = std::min(gap, std::abs(a - b));
      }
    }
  }
  if (n == 1 && game.abstention().enabled()) {
    for (const Usd a : game.values(0)) {
      gap = std::min(gap, std::abs(a - game.abstention().v0()));
    }
  }
  if (!(gap > 0.0)) {
    throw DomainError(
        "cross-provider value tie: the potential constant is undefined");
  }
  cfg.delta_min = gap;
  const double spread = std::max(std::log(cfg.u_max) - std::log(cfg.u_min), 0.0);
  cfg.c = std::isinf(gap) ? 1.0 : spread / gap + 1.0;
  return cfg;
}

double potential(const GameInstance& game, const StrategyProfile& profile,
                 const std::optional<PotentialConfig>& config) {
  const auto values = game.offered_values(profile);
  const auto n = values.size();

  if (game.rationality().is_perfect()) {
    if (!config) {
      throw InvalidArgument(
          "perfect-rationality potential needs a PotentialConfig");
    }
    std::size_t leader = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (values[i] > values[leader]) leader = i;
    }
    double runner_up = -kInf;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != leader) runner_up = std::max(runner_up, values[i]);
    }
    if (n == 1) {
      runner_up = game.abstention().enabled() ? game.abstention().v0() : 0.0;
    }
    const Usd profit = game.profits(leader)[profile[leader]];
    if (!(profit > 0.0)) {
      throw DomainError("potential: non-positive profit for the leader");
    }
    return std::log(profit) + config->c * runner_up;
  }

  const double beta = game.rationality().beta();
  double sum_log_profit = 0.0;
  double sum_value = 0.0;
  std::vector<double> exponents;
  exponents.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Usd profit = game.profits(i)[profile[i]];
    if (!(profit > 0.0)) {
      throw DomainError("potential: non-positive profit for provider " +
                        std::to_string(i));
    }
    sum_log_profit += std::log(profit);
    sum_value += values[i];
    exponents.push_back(beta * values[i]);
  }
  if (game.abstention().enabled()) {
    exponents.push_back(beta * game.abstention().v0());
  }
  return sum_log_profit + beta * sum_value - log_sum_exp(exponents);
}

EquilibriumWitness is_nash(const GameInstance& game,
                           const StrategyProfile& profile) {
  game.check(profile);
  EquilibriumWitness w;
  w.profile = profile;
  for (std::size_t i = 0; i < game.num_providers(); ++i) {
    const Usd current = utility(game, profile, i);
    for (Level k = 0; k < game.provider(i).num_levels(); ++k) {
      if (k == profile[i]) continue;
      if (deviation_utility(game, profile, i, k) >
          current + kImprovementThreshold) {
        w.is_equilibrium = false;
        w.violating_provider = i;
        w.improving_level = k;
        return w;
      }
    }
  }
  return w;
}

DominantPrediction rational_equilibrium_prediction(const GameInstance& game) {
  if (!game.rationality().is_perfect()) {
    throw InvalidArgument(
        "the dominant-provider prediction needs perfect rationality");
  }
  const auto n = game.num_providers();
  std::vector<Usd> best(n);
  for (std::size_t i = 0; i < n; ++i) {
    best[i] = max_user_value(game.provider(i)).value;
  }

  DominantPrediction out;
  out.provider = static_cast<std::size_t>(
      std::max_element(best.begin(), best.end()) - best.begin());
  out.best_value = best[out.provider];
  out.runner_up_value = -kInf;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == out.provider) continue;
    if (best[i] == out.best_value) {
      throw DomainError("providers " + std::to_string(out.provider) + " and " +
                        std::to_string(i) + " tie on their best value");
    }
    out.runner_up_value = std::max(out.runner_up_value, best[i]);
  }
  if (game.abstention().enabled()) {
    out.runner_up_value =
        std::max(out.runner_up_value, game.abstention().v0());
  }

  const auto v = game.values(out.provider);
  const auto profit = game.profits(out.provider);
  std::optional<Level> chosen;
  for (Level k = 0; k < v.size(); ++k) {
    if (v[k] > out.runner_up_value) chosen = k;
  }
  if (!chosen) {
    throw DomainError("no level of the dominant provider beats the runner-up");
  }
  out.level = *chosen;

  out.blocking_value = -kInf;
  for (Level k = 0; k < v.size(); ++k) {
    if (v[k] < out.runner_up_value && profit[k] > profit[out.level]) {
      out.blocking_value = std::max(out.blocking_value, v[k]);
    }
  }
  return out;
}

bool competitor_blocks(const GameInstance& game,
                       const StrategyProfile& profile,
                       const DominantPrediction& prediction) {
  const auto values = game.offered_values(profile);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != prediction.provider && values[i] > prediction.blocking_value) {
      return true;
    }
  }
  return false;
}

}  // namespace ttc
