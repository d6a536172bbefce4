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
#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "ttc/auction.hpp"
#include "ttc/dynamics.hpp"
#include "ttc/game.hpp"
#include "ttc/welfare.hpp"

namespace ttc {

// Shortest round-trip decimal; "inf", "-inf" and "nan" for non-finite
// values.
std::string format_number(double x);

// Non-finite numbers become null.
nlohmann::json number_json(double x);

nlohmann::json game_json(const GameInstance& game);

nlohmann::json trace_json(const GameInstance& game, const DynamicsTrace& trace);

// Columns: t, mover, level_0.., share_0.., abstention_share, utility_0..,
// potential, welfare, inefficiency. `mover` is empty on the last step.
void write_trace_csv(std::ostream& out, const DynamicsTrace& trace,
                     std::size_t num_providers);

// Columns: beta, inefficiency, converged, iterations, equilibrium_levels.
// Levels are joined with ';' and empty when the run did not converge.
void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points);

// Shares, utilities, welfare and PoA of one profile. `max_welfare` may be
// omitted, in which case PoA is left out.
nlohmann::json profile_json(const GameInstance& game,
                            const StrategyProfile& profile,
                            std::optional<Usd> max_welfare);

// Aggregate market quantities of a profile: share-weighted user value (the
// outside option included), share-weighted price, total provider utility
// and social welfare.
struct MarketSummary {
  Usd user_value = 0.0;
  Usd price = 0.0;
  Usd provider_utility = 0.0;
  Usd social_welfare = 0.0;
};

MarketSummary market_summary(const GameInstance& game,
                             const StrategyProfile& profile);

// Auction outcome plus one comparison row per quantity against the game
// equilibrium, when given.
nlohmann::json auction_json(const GameInstance& game,
                            const AuctionEquilibrium& auction,
                            const std::optional<StrategyProfile>& equilibrium);

}  // namespace ttc
