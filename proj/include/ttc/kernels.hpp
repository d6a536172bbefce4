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

// Exhaustive scans over the strategy space Theta_1 x ... x Theta_N.
//
// Profiles are indexed in mixed radix with provider 0 most significant, so
// index order is lexicographic order. The parallel kernels split the index
// range into fixed-size chunks; per-chunk results are merged in chunk order,
// which makes every output independent of the worker count.

#include <cstdint>
#include <vector>

#include "ttc/game.hpp"

namespace ttc {

inline constexpr std::uint64_t kDefaultScanBudget = 100'000'000;

struct ScanOptions {
  std::uint64_t budget = kDefaultScanBudget;
  int workers = 0;  // 0: OpenMP default
};

StrategyProfile decode_profile(const GameInstance& game, std::uint64_t index);
std::uint64_t encode_profile(const GameInstance& game,
                             const StrategyProfile& profile);

struct WelfareOptimum {
  StrategyProfile profile;
  Usd welfare = 0.0;

  friend bool operator==(const WelfareOptimum&,
                         const WelfareOptimum&) = default;
};

// All pure Nash equilibria as profile indices, ascending.
// Throws BudgetExceeded when the space is larger than options.budget.
std::vector<std::uint64_t> enumerate_equilibrium_indices(
    const GameInstance& game, const ScanOptions& options = {});

std::vector<StrategyProfile> enumerate_equilibria(
    const GameInstance& game, const ScanOptions& options = {});

// Welfare-maximizing profile; the lexicographically smallest wins ties.
WelfareOptimum max_social_welfare(const GameInstance& game,
                                  const ScanOptions& options = {});

// Serial scans built directly on is_nash() and social_welfare(). They are
// the oracle for the kernels above and the baseline in the benchmark.
namespace reference {

std::vector<StrategyProfile> enumerate_equilibria(
    const GameInstance& game, std::uint64_t budget = kDefaultScanBudget);

WelfareOptimum max_social_welfare(const GameInstance& game,
                                  std::uint64_t budget = kDefaultScanBudget);

}  // namespace reference

}  // namespace ttc
