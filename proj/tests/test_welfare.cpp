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

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "properties.hpp"
#include "ttc/errors.hpp"
#include "ttc/serialize.hpp"
#include "ttc/welfare.hpp"

using namespace ttc;
using ttc::testing::kHigh;
using ttc::testing::kLow;
using ttc::testing::near;

TEST_CASE("worked example price of anarchy") {
  const auto g = testing::worked_example();
  const auto r = price_of_anarchy(g, StrategyProfile{{kHigh, kLow}});
  CHECK(near(r.poa, 1.4375));
  CHECK(near(r.welfare_at_equilibrium, 0.8));
  CHECK(near(r.max_welfare, 1.15));
  CHECK(r.welfare_maximizer.levels == std::vector<Level>{kLow, kLow});
  CHECK_THROWS_AS(price_of_anarchy(g, StrategyProfile{{kLow, kLow}}),
                  InvalidArgument);
}

TEST_CASE("finite-beta price of anarchy against a full scan") {
  const auto g = testing::worked_example(AbstentionPolicy::value(0.0),
                                     Rationality::finite(1000.0));
  const auto eqs = oracle::equilibria(g);
  REQUIRE_FALSE(eqs.empty());
  for (const auto& e : eqs) {
    const auto r = price_of_anarchy(g, e);
    const double expect = static_cast<double>(oracle::max_welfare(g) /
                                              oracle::welfare(g, e));
    CHECK(near(r.poa, expect, 1e-12));
    CHECK(r.poa >= 1.0 - 1e-9);
  }
}

TEST_CASE("an efficient equilibrium has price of anarchy 1") {
  // Provider a wins at both levels and its top level also maximizes q - c.
  const ProviderProfile a("a", {"x", "y"}, {2.0, 2.5}, {0.3, 0.45},
                          {0.2, 0.3});
  const ProviderProfile b("b", {"x"}, {1.0}, {0.5}, {0.2});
  const GameInstance g({a, b}, AbstentionPolicy::disabled(),
                       Rationality::perfect());
  const auto eqs = enumerate_equilibria(g);
  REQUIRE(eqs.size() == 1);
  CHECK(eqs[0].levels == std::vector<Level>{1, 0});
  CHECK(price_of_anarchy(g, eqs[0]).poa == 1.0);
}

TEST_CASE("non-positive equilibrium welfare is a domain error") {
  // A single provider whose only level destroys value.
  const ProviderProfile p("p", {"x"}, {0.1}, {0.5}, {0.3});
  const GameInstance g({p}, AbstentionPolicy::disabled(), Rationality::perfect());
  CHECK_THROWS_AS(price_of_anarchy(g, StrategyProfile{{0}}), DomainError);
}

TEST_CASE("worked example leading bound") {
  const auto g = testing::worked_example();
  const auto b = leading_poa_bound(g, StrategyProfile{{kHigh, kLow}});
  CHECK(near(b.w_star, 1.15));
  CHECK(near(b.delta_sw, 0.35));
  CHECK(near(b.leading_bound, 1.0 + 0.35 / 1.15));
  CHECK(b.leading_bound == doctest::Approx(1.30435).epsilon(1e-5));
  CHECK(near(b.delta_v, 0.175));
  CHECK(b.leader_at_optimum == 0);
  CHECK(b.leader_at_equilibrium == 0);
  CHECK(b.welfare_optimal_profile.levels == std::vector<Level>{kLow, kLow});
  CHECK(b.leading_bound <= 1.4375);
  CHECK_THROWS_AS(leading_poa_bound(g, StrategyProfile{{kLow, kLow}}),
                  InvalidArgument);
}

TEST_CASE("bound is 1 when the leader already plays its welfare optimum") {
  const ProviderProfile a("a", {"x"}, {2.0}, {0.5}, {0.2});
  const ProviderProfile b("b", {"x"}, {1.0}, {0.6}, {0.2});
  const GameInstance g({a, b}, AbstentionPolicy::disabled(),
                       Rationality::perfect());
  const auto r = leading_poa_bound(g, StrategyProfile{{0, 0}});
  CHECK(r.delta_sw == 0.0);
  CHECK(r.leading_bound == 1.0);
}

TEST_CASE("value tie for the lead is a domain error") {
  const ProviderProfile a("a", {"x"}, {1.0}, {0.5}, {0.2});
  const ProviderProfile b("b", {"x"}, {0.8}, {0.3}, {0.1});
  const GameInstance g({a, b}, AbstentionPolicy::disabled(),
                       Rationality::perfect());
  CHECK_THROWS_AS(leading_poa_bound(g, StrategyProfile{{0, 0}}), DomainError);
}

TEST_CASE("leading bound property suite") {
  const auto r = testing::leading_bound_suite(60, 303);
  INFO(r.summary());
  CHECK(r.ok());
}

TEST_CASE("beta sweep") {
  const auto g = testing::worked_example(AbstentionPolicy::value(0.0));
  const std::vector<double> betas = {200.0, 1000.0, 1e5};
  const auto pts = beta_sweep(g, betas, DynamicsConfig{});
  REQUIRE(pts.size() == 3);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    CHECK(pts[k].beta == betas[k]);
    REQUIRE(pts[k].converged);
    const auto gb = g.with_rationality(Rationality::finite(betas[k]));
    CHECK(oracle::is_nash(gb, *pts[k].equilibrium));
    const double expect = static_cast<double>(
        oracle::max_welfare(gb) / oracle::welfare(gb, *pts[k].equilibrium) - 1);
    CHECK(near(pts[k].inefficiency, expect, 1e-12));
    CHECK(pts[k].inefficiency ==
          price_of_anarchy(gb, *pts[k].equilibrium).poa - 1.0);
  }

  CHECK(beta_sweep(g, std::vector<double>{}, DynamicsConfig{}).empty());
  const auto twice = beta_sweep(g, std::vector<double>{500.0, 500.0},
                                DynamicsConfig{});
  CHECK(twice[0].inefficiency == twice[1].inefficiency);
  CHECK(twice[0].iterations == twice[1].iterations);
  CHECK(twice[0].equilibrium == twice[1].equilibrium);

  const auto inf = beta_sweep(
      g, std::vector<double>{std::numeric_limits<double>::infinity()},
      DynamicsConfig{});
  CHECK(near(inf[0].inefficiency, 0.4375));

  CHECK_THROWS_AS(beta_sweep(g, std::vector<double>{0.0}, DynamicsConfig{}),
                  InvalidArgument);
  CHECK_THROWS_AS(beta_sweep(g, std::vector<double>{-2.0}, DynamicsConfig{}),
                  InvalidArgument);

  std::ostringstream os;
  write_sweep_csv(os, pts);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "beta,inefficiency,converged,iterations,equilibrium_levels");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
}
