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

#include "ttc/auction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "ttc/errors.hpp"

namespace ttc {

namespace {

constexpr double kDominanceTolerance = 1e-12;
constexpr std::uint64_t kMaxComparisons = 100'000'000;

// Utility of bids[0] against the rest, or nullopt on a tie at the top.
std::optional<Usd> first_bidder_utility(std::span<const Bid> bids, Usd cost) {
  const Usd mine = bids[0].value();
  Usd best_other = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < bids.size(); ++k) {
    best_other = std::max(best_other, bids[k].value());
  }
  if (mine == best_other) return std::nullopt;
  if (mine < best_other) {
    // Tie among the others is irrelevant to a loser's utility.
    return 0.0;
  }
  return bids[0].quality - best_other - cost;
}

}  // namespace

Bid dominant_bid(const ProviderProfile& profile, std::size_t provider) {
  const auto best = welfare_optimal_level(profile);
  return Bid{provider, best.level, profile.quality(best.level),
             profile.cost(best.level)};
}

AuctionOutcome run_auction(std::span<const Bid> bids,
                           std::span<const Usd> costs) {
  if (bids.size() < 2) {
    throw InvalidArgument("auction requires ≥ 2 providers");
  }
  if (costs.size() != bids.size()) {
    throw InvalidArgument("auction needs one cost per bid");
  }
  for (std::size_t k = 0; k < bids.size(); ++k) {
    const Bid& b = bids[k];
    if (!std::isfinite(b.quality) || !std::isfinite(b.price) ||
        b.quality < 0.0 || b.price < 0.0 || !std::isfinite(costs[k])) {
      throw InvalidArgument("bid of provider " + std::to_string(b.provider) +
                            " has a negative or non-finite entry");
    }
  }

  std::vector<std::size_t> order(bids.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return bids[a].value() > bids[b].value();
                   });
  const Bid& first = bids[order[0]];
  const Bid& second = bids[order[1]];
  if (first.value() == second.value()) {
    std::string tied;
    for (const std::size_t k : order) {
      if (bids[k].value() != first.value()) break;
      tied += (tied.empty() ? "" : ", ") + std::to_string(bids[k].provider);
    }
    throw DomainError("tie for the highest offered value between providers " +
                      tied);
  }

  AuctionOutcome out;
  out.winner = first.provider;
  out.user_net_value = second.value();
  out.payment = first.quality - out.user_net_value;
  out.winner_utility = out.payment - costs[order[0]];
  out.welfare = first.quality - costs[order[0]];
  out.ordering.reserve(order.size());
  for (const std::size_t k : order) out.ordering.push_back(bids[k].provider);
  return out;
}

AuctionEquilibrium auction_equilibrium(const GameInstance& game) {
  if (game.num_providers() < 2) {
    throw InvalidArgument("auction requires ≥ 2 providers");
  }
  AuctionEquilibrium out;
  std::vector<Usd> costs;
  for (std::size_t i = 0; i < game.num_providers(); ++i) {
    out.bids.push_back(dominant_bid(game.provider(i), i));
    costs.push_back(out.bids.back().price);
  }
  out.outcome = run_auction(out.bids, costs);
  return out;
}

std::vector<Usd> price_grid(Usd quality, Usd cost, const PriceGrid& grid) {
  if (grid.points < 3) {
    throw InvalidArgument("price grid needs at least 3 points");
  }
  std::vector<Usd> out = {cost - grid.epsilon, cost, cost + grid.epsilon};
  const std::size_t extra = grid.points - 3;
  const Usd top = quality + cost;
  for (std::size_t k = 0; k < extra; ++k) {
    out.push_back(extra == 1 ? 0.0
                             : top * static_cast<double>(k) /
                                   static_cast<double>(extra - 1));
  }
  for (Usd& p : out) p = std::max(p, 0.0);
  return out;
}

DominanceReport verify_dominant_strategy(const GameInstance& game,
                                         std::size_t provider,
                                         std::span<const Usd> opponent_values,
                                         const PriceGrid& grid) {
  const std::size_t n = game.num_providers();
  if (n < 2) throw InvalidArgument("auction requires ≥ 2 providers");
  if (provider >= n) {
    throw InvalidArgument("unknown provider " + std::to_string(provider));
  }
  if (opponent_values.empty()) {
    throw InvalidArgument("opponent value grid is empty");
  }

  const ProviderProfile& me = game.provider(provider);
  struct Deviation {
    Bid bid;
    Usd cost;
  };
  std::vector<Deviation> deviations;
  for (Level l = 0; l < me.num_levels(); ++l) {
    for (const Usd p : price_grid(me.quality(l), me.cost(l), grid)) {
      deviations.push_back({Bid{provider, l, me.quality(l), p}, me.cost(l)});
    }
  }

  const std::size_t m = opponent_values.size();
  std::uint64_t configs = 1;
  for (std::size_t j = 1; j < n; ++j) {
    if (configs > kMaxComparisons / m) {
      throw InvalidArgument("opponent grid is too large");
    }
    configs *= m;
  }
  if (configs > kMaxComparisons / deviations.size()) {
    throw InvalidArgument("dominance grid is too large");
  }

  DominanceReport report;
  report.provider = provider;
  report.dominant = dominant_bid(me, provider);
  report.configurations = configs;

  struct Partial {
    std::size_t comparisons = 0;
    std::size_t skipped = 0;
    std::vector<DominanceCounterexample> found;
  };
  std::vector<Partial> partial(configs);

  const auto count = static_cast<std::int64_t>(configs);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t c = 0; c < count; ++c) {
    // bids[0] is the provider under test; the rest are opponents in
    // provider order, the first opponent most significant.
    std::vector<Bid> bids(n);
    std::uint64_t rest = static_cast<std::uint64_t>(c);
    std::size_t slot = n - 1;
    for (std::size_t j = n; j-- > 0;) {
      if (j == provider) continue;
      const Usd v = opponent_values[rest % m];
      rest /= m;
      bids[slot--] = Bid{j, 0, std::max(v, 0.0), std::max(-v, 0.0)};
    }
    Partial& out = partial[c];

    bids[0] = report.dominant;
    const auto base = first_bidder_utility(bids, report.dominant.price);
    for (const Deviation& d : deviations) {
      bids[0] = d.bid;
      const auto dev = first_bidder_utility(bids, d.cost);
      if (!base || !dev) {
        ++out.skipped;
        continue;
      }
      ++out.comparisons;
      if (*base < *dev - kDominanceTolerance) {
        DominanceCounterexample ce;
        ce.opponents.assign(bids.begin() + 1, bids.end());
        ce.deviation = d.bid;
        ce.dominant_utility = *base;
        ce.deviation_utility = *dev;
        out.found.push_back(std::move(ce));
      }
    }
  }

  for (auto& p : partial) {
    report.comparisons += p.comparisons;
    report.skipped_ties += p.skipped;
    for (auto& ce : p.found) report.counterexamples.push_back(std::move(ce));
  }
  return report;
}

}  // namespace ttc
