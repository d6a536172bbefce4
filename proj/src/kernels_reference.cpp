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

#include "ttc/errors.hpp"
#include "ttc/kernels.hpp"

namespace ttc {

StrategyProfile decode_profile(const GameInstance& game, std::uint64_t index) {
  const auto n = game.num_providers();
  if (index >= game.num_profiles()) {
    throw InvalidArgument("profile index " + std::to_string(index) +
                          " out of range");
  }
  StrategyProfile out;
  out.levels.resize(n);
  for (std::size_t i = n; i-- > 0;) {
    const auto radix = game.provider(i).num_levels();
    out[i] = index % radix;
    index /= radix;
  }
  return out;
}

std::uint64_t encode_profile(const GameInstance& game,
                             const StrategyProfile& profile) {
  game.check(profile);
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    index = index * game.provider(i).num_levels() + profile[i];
  }
  return index;
}

namespace reference {

namespace {

void check_budget(const GameInstance& game, std::uint64_t budget) {
  const auto total = game.num_profiles();
  if (total > budget) throw BudgetExceeded(total, budget);
}

}  // namespace

std::vector<StrategyProfile> enumerate_equilibria(const GameInstance& game,
                                                  std::uint64_t budget) {
  check_budget(game, budget);
  std::vector<StrategyProfile> out;
  const auto total = game.num_profiles();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    auto profile = decode_profile(game, idx);
    if (is_nash(game, profile).is_equilibrium) out.push_back(std::move(profile));
  }
  return out;
}

WelfareOptimum max_social_welfare(const GameInstance& game,
                                  std::uint64_t budget) {
  check_budget(game, budget);
  WelfareOptimum best{decode_profile(game, 0), 0.0};
  best.welfare = social_welfare(game, best.profile);
  const auto total = game.num_profiles();
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    auto profile = decode_profile(game, idx);
    const Usd w = social_welfare(game, profile);
    if (w > best.welfare) best = {std::move(profile), w};
  }
  return best;
}

}  // namespace reference
}  // namespace ttc
