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

#include "ttc/serialize.hpp"

#include <charconv>
#include <cmath>

namespace ttc {

namespace {

nlohmann::json numbers_json(std::span<const double> xs) {
  auto out = nlohmann::json::array();
  for (const double x : xs) out.push_back(number_json(x));
  return out;
}

nlohmann::json levels_json(const StrategyProfile& p) {
  return nlohmann::json(p.levels);
}

std::string join_levels(const StrategyProfile& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(p[i]);
  }
  return out;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

nlohmann::json number_json(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

nlohmann::json game_json(const GameInstance& game) {
  nlohmann::json out;
  out["rationality"] = game.rationality().is_perfect()
                           ? nlohmann::json("inf")
                           : nlohmann::json(game.rationality().beta());
  out["v0"] = game.abstention().enabled()
                  ? number_json(game.abstention().v0())
                  : nlohmann::json(nullptr);
  auto providers = nlohmann::json::array();
  for (const auto& p : game.providers()) {
    auto levels = nlohmann::json::array();
    for (Level k = 0; k < p.num_levels(); ++k) {
      levels.push_back({{"ordinal", k},
                        {"label", p.level(k).label},
                        {"quality", p.quality(k)},
                        {"price", p.price(k)},
                        {"cost", p.cost(k)},
                        {"value", user_value(p, k)},
                        {"welfare", welfare_contribution(p, k)}});
    }
    providers.push_back({{"id", p.id()}, {"levels", std::move(levels)}});
  }
  out["providers"] = std::move(providers);
  return out;
}

nlohmann::json trace_json(const GameInstance& game, const DynamicsTrace& trace) {
  nlohmann::json out;
  out["game"] = game_json(game);
  out["converged"] = trace.converged;
  out["iterations"] = trace.steps.empty() ? 0 : trace.steps.size() - 1;
  out["equilibrium"] = trace.equilibrium ? levels_json(*trace.equilibrium)
                                         : nlohmann::json(nullptr);
  out["max_welfare"] = number_json(trace.optimum.welfare);
  out["welfare_maximizer"] = levels_json(trace.optimum.profile);
  auto steps = nlohmann::json::array();
  for (const auto& s : trace.steps) {
    steps.push_back(
        {{"t", s.t},
         {"mover", s.mover ? nlohmann::json(*s.mover) : nlohmann::json(nullptr)},
         {"levels", levels_json(s.profile)},
         {"shares", numbers_json(s.shares.provider_shares)},
         {"abstention_share", number_json(s.shares.abstention_share)},
         {"utilities", numbers_json(s.utilities)},
         {"potential", number_json(s.potential)},
         {"welfare", number_json(s.welfare)},
         {"inefficiency", number_json(s.inefficiency)}});
  }
  out["steps"] = std::move(steps);
  return out;
}

void write_trace_csv(std::ostream& out, const DynamicsTrace& trace,
                     std::size_t num_providers) {
  out << "t,mover";
  for (std::size_t i = 0; i < num_providers; ++i) out << ",level_" << i;
  for (std::size_t i = 0; i < num_providers; ++i) out << ",share_" << i;
  out << ",abstention_share";
  for (std::size_t i = 0; i < num_providers; ++i) out << ",utility_" << i;
  out << ",potential,welfare,inefficiency\n";
  for (const auto& s : trace.steps) {
    out << s.t << ',';
    if (s.mover) out << *s.mover;
    for (const Level l : s.profile.levels) out << ',' << l;
    for (const double x : s.shares.provider_shares) {
      out << ',' << format_number(x);
    }
    out << ',' << format_number(s.shares.abstention_share);
    for (const double u : s.utilities) out << ',' << format_number(u);
    out << ',' << format_number(s.potential) << ','
        << format_number(s.welfare) << ',' << format_number(s.inefficiency)
        << '\n';
  }
}

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points) {
  out << "beta,inefficiency,converged,iterations,equilibrium_levels\n";
  for (const auto& p : points) {
    out << format_number(p.beta) << ',' << format_number(p.inefficiency) << ','
        << (p.converged ? "true" : "false") << ',' << p.iterations << ','
        << (p.equilibrium ? join_levels(*p.equilibrium) : "") << '\n';
  }
}

nlohmann::json profile_json(const GameInstance& game,
                            const StrategyProfile& profile,
                            std::optional<Usd> max_welfare) {
  const auto sh = profile_shares(game, profile);
  std::vector<Usd> utilities;
  auto labels = nlohmann::json::array();
  for (std::size_t i = 0; i < game.num_providers(); ++i) {
    utilities.push_back(utility(game, profile, i));
    labels.push_back(game.provider(i).level(profile[i]).label);
  }
  const Usd w = social_welfare(game, profile);
  nlohmann::json out{{"levels", levels_json(profile)},
                     {"labels", std::move(labels)},
                     {"shares", numbers_json(sh.provider_shares)},
                     {"abstention_share", number_json(sh.abstention_share)},
                     {"utilities", numbers_json(utilities)},
                     {"welfare", number_json(w)}};
  if (max_welfare) {
    out["poa"] = w > 0.0 ? number_json(*max_welfare / w)
                         : nlohmann::json(nullptr);
  }
  return out;
}

MarketSummary market_summary(const GameInstance& game,
                             const StrategyProfile& profile) {
  const auto sh = profile_shares(game, profile);
  MarketSummary out;
  for (std::size_t i = 0; i < game.num_providers(); ++i) {
    const double s = sh.provider_shares[i];
    if (s == 0.0) continue;
    out.user_value += s * game.values(i)[profile[i]];
    out.price += s * game.provider(i).price(profile[i]);
    out.provider_utility += s * game.profits(i)[profile[i]];
  }
  if (game.abstention().enabled() && sh.abstention_share > 0.0) {
    out.user_value += sh.abstention_share * game.abstention().v0();
  }
  out.social_welfare = social_welfare(game, profile);
  return out;
}

nlohmann::json auction_json(const GameInstance& game,
                            const AuctionEquilibrium& auction,
                            const std::optional<StrategyProfile>& equilibrium) {
  const AuctionOutcome& o = auction.outcome;
  auto bids = nlohmann::json::array();
  for (const auto& b : auction.bids) {
    bids.push_back({{"provider", b.provider},
                    {"level", b.level},
                    {"label", game.provider(b.provider).level(b.level).label},
                    {"quality", b.quality},
                    {"price", b.price},
                    {"value", b.value()}});
  }
  nlohmann::json out;
  out["bids"] = std::move(bids);
  out["outcome"] = {{"winner", o.winner},
                    {"payment", o.payment},
                    {"winner_utility", o.winner_utility},
                    {"user_net_value", o.user_net_value},
                    {"welfare", o.welfare},
                    {"ordering", o.ordering}};

  nlohmann::json game_side = nullptr;
  if (equilibrium) {
    const auto m = market_summary(game, *equilibrium);
    game_side = {{"equilibrium", levels_json(*equilibrium)},
                 {"user_value", m.user_value},
                 {"price", m.price},
                 {"provider_utility", m.provider_utility},
                 {"social_welfare", m.social_welfare}};
  }
  out["game"] = game_side;

  auto rows = nlohmann::json::array();
  const auto row = [&](const char* name, const char* key, Usd auction_value) {
    rows.push_back({{"quantity", name},
                    {"game", equilibrium ? game_side[key]
                                         : nlohmann::json(nullptr)},
                    {"auction", auction_value}});
  };
  row("user value", "user_value", o.user_net_value);
  row("price", "price", o.payment);
  row("provider utility", "provider_utility", o.winner_utility);
  row("social welfare", "social_welfare", o.welfare);
  out["comparison"] = std::move(rows);
  return out;
}

}  // namespace ttc
