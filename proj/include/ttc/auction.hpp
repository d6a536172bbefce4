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

#include <cstddef>
#include <span>
#include <vector>

#include "ttc/game.hpp"
#include "ttc/provider.hpp"

namespace ttc {

// A sealed (quality, price) bid. `level` is the compute level backing the
// quality claim.
struct Bid {
  std::size_t provider = 0;
  Level level = 0;
  Usd quality = 0.0;
  Usd price = 0.0;

  Usd value() const noexcept { return quality - price; }
};

struct AuctionOutcome {
  std::size_t winner = 0;
  Usd payment = 0.0;
  Usd winner_utility = 0.0;
  Usd user_net_value = 0.0;
  Usd welfare = 0.0;
  // Providers by offered value, best first.
  std::vector<std::size_t> ordering;
};

// Bids the welfare-optimal level at cost.
Bid dominant_bid(const ProviderProfile& profile, std::size_t provider = 0);

// Reverse second-price auction: the highest offered value wins and the user
// pays the winner's quality minus the runner-up's offered value. costs[k] is
// the generation cost behind bids[k].
//
// Throws InvalidArgument with fewer than two bids, a negative or non-finite
// bid entry, or mismatched lengths, and DomainError when the best offered
// value is tied.
AuctionOutcome run_auction(std::span<const Bid> bids,
                           std::span<const Usd> costs);

struct AuctionEquilibrium {
  std::vector<Bid> bids;
  AuctionOutcome outcome;
};

// Every provider submits its dominant bid. Throws InvalidArgument for fewer
// than two providers.
AuctionEquilibrium auction_equilibrium(const GameInstance& game);

// Deviation prices tried at each level: cost - epsilon, cost, cost +
// epsilon, and `points - 3` more spread evenly over [0, quality + cost].
// Negative prices are clamped to 0.
struct PriceGrid {
  std::size_t points = 5;
  Usd epsilon = 1e-3;
};

std::vector<Usd> price_grid(Usd quality, Usd cost, const PriceGrid& grid);

struct DominanceCounterexample {
  std::vector<Bid> opponents;
  Bid deviation;
  Usd dominant_utility = 0.0;
  Usd deviation_utility = 0.0;
};

struct DominanceReport {
  std::size_t provider = 0;
  Bid dominant;
  std::size_t configurations = 0;  // opponent bid profiles tried
  std::size_t comparisons = 0;     // (configuration, deviation) pairs checked
  std::size_t skipped_ties = 0;    // pairs with a tie for the best value
  std::vector<DominanceCounterexample> counterexamples;

  bool holds() const noexcept { return counterexamples.empty(); }
};

// Checks that the dominant bid of `provider` is a best reply to every
// opponent bid profile in the grid: each opponent independently offers one
// of `opponent_values` (quality max(v, 0), price max(-v, 0)), and the
// provider deviates over every level and every price in price_grid().
// A pair is skipped when either bid of the provider ties for the best
// offered value. Counterexamples come back in grid order.
//
// Throws InvalidArgument for fewer than two providers, an unknown provider,
// empty opponent values, fewer than three grid points, or a grid of more
// than 10^8 comparisons.
DominanceReport verify_dominant_strategy(const GameInstance& game,
                                         std::size_t provider,
                                         std::span<const Usd> opponent_values,
                                         const PriceGrid& grid = {});

}  // namespace ttc
