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

#include "fixtures.hpp"
#include "oracles.hpp"
#include "properties.hpp"
#include "ttc/errors.hpp"
#include "ttc/market_share.hpp"

using namespace ttc;
using ttc::testing::near;

namespace {
const auto kOff = AbstentionPolicy::disabled();
}

TEST_CASE("perfect rationality picks the best offer") {
  const std::vector<double> v = {1.0875, 0.375};
  const auto s = shares(v, kOff, Rationality::perfect());
  CHECK(s.provider_shares == std::vector<double>{1.0, 0.0});
  CHECK(s.abstention_share == 0.0);
  CHECK_FALSE(s.tie);
}

TEST_CASE("perfect rationality ties") {
  SUBCASE("lowest index wins among providers") {
    const auto s = shares(std::vector<double>{0.5, 0.7, 0.7}, kOff,
                          Rationality::perfect());
    CHECK(s.provider_shares == std::vector<double>{0.0, 1.0, 0.0});
    CHECK(s.tie);
  }
  SUBCASE("providers win a tie with the outside option") {
    const auto s = shares(std::vector<double>{0.2, 0.0},
                          AbstentionPolicy::value(0.2), Rationality::perfect());
    CHECK(s.provider_shares[0] == 1.0);
    CHECK(s.abstention_share == 0.0);
    CHECK(s.tie);
  }
  SUBCASE("outside option wins only when strictly better") {
    const auto s = shares(std::vector<double>{0.2, 0.1},
                          AbstentionPolicy::value(0.3), Rationality::perfect());
    CHECK(s.abstention_share == 1.0);
    CHECK(s.provider_shares == std::vector<double>{0.0, 0.0});
  }
}

TEST_CASE("softmax examples") {
  SUBCASE("symmetric values split evenly") {
    for (const double v : {-3.0, 0.0, 0.25, 7.0}) {
      for (const double beta : {0.01, 1.0, 1e4}) {
        const auto s = shares(std::vector<double>{v, v}, kOff,
                              Rationality::finite(beta));
        CHECK(s.provider_shares[0] == 0.5);
        CHECK(s.provider_shares[1] == 0.5);
      }
    }
  }
  SUBCASE("two providers and the outside option at beta 1") {
    const auto s = shares(std::vector<double>{1.0, 0.0},
                          AbstentionPolicy::value(0.0), Rationality::finite(1.0));
    const double e = std::exp(1.0);
    CHECK(near(s.provider_shares[0], e / (e + 2.0), 1e-15));
    CHECK(near(s.provider_shares[1], 1.0 / (e + 2.0), 1e-15));
    CHECK(near(s.abstention_share, 1.0 / (e + 2.0), 1e-15));
    CHECK(s.provider_shares[0] == doctest::Approx(0.57612).epsilon(1e-5));
  }
}

TEST_CASE("softmax matches a direct long double evaluation") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 500; ++t) {
    std::vector<double> v(1 + t % 6);
    for (auto& x : v) x = u(rng);
    const double beta = 0.05 * (1 + t % 40);
    const bool with_v0 = t % 2 == 0;
    const auto s = shares(v, with_v0 ? AbstentionPolicy::value(0.1) : kOff,
                          Rationality::finite(beta));
    const auto o = oracle::softmax_naive(
        v, with_v0 ? std::optional<double>(0.1) : std::nullopt, beta);
    for (std::size_t k = 0; k < v.size(); ++k) {
      CHECK(near(s.provider_shares[k], static_cast<double>(o.provider[k]), 1e-14));
    }
    CHECK(near(s.abstention_share, static_cast<double>(o.abstention), 1e-14));
  }
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(shares(std::vector<double>{}, kOff, Rationality::perfect()),
                  InvalidArgument);
  CHECK_THROWS_AS(shares(std::vector<double>{NAN}, kOff, Rationality::perfect()),
                  InvalidArgument);
  CHECK_THROWS_AS(shares(std::vector<double>{INFINITY, 1.0}, kOff,
                         Rationality::finite(1.0)),
                  InvalidArgument);
  CHECK_THROWS_AS(Rationality::finite(0.0), InvalidArgument);
  CHECK_THROWS_AS(Rationality::finite(-1.0), InvalidArgument);
  CHECK_THROWS_AS(Rationality::finite(INFINITY), InvalidArgument);
  CHECK_THROWS_AS(Rationality::perfect().beta(), InvalidArgument);
  CHECK_THROWS_AS(AbstentionPolicy::disabled().v0(), InvalidArgument);
}

TEST_CASE("share vector invariants") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    std::vector<double> v(1 + t % 5);
    for (auto& x : v) x = u(rng);
    for (const auto& rat : {Rationality::perfect(), Rationality::finite(3.0),
                            Rationality::finite(1e5)}) {
      for (const auto& ab : {kOff, AbstentionPolicy::value(u(rng))}) {
        const auto s = shares(v, ab, rat);
        double sum = s.abstention_share;
        for (const double x : s.provider_shares) {
          CHECK(x >= 0.0);
          CHECK(x <= 1.0);
          sum += x;
        }
        CHECK(near(sum, 1.0));
        if (!ab.enabled()) CHECK(s.abstention_share == 0.0);
      }
    }
  }
}

TEST_CASE("finite shares approach perfect shares") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> v(2 + t % 4);
    for (auto& x : v) x = u(rng);
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end(), [](double a, double b) {
          return b - a < 1e-4;
        }) != v.end()) {
      continue;
    }
    std::shuffle(v.begin(), v.end(), rng);
    const auto sharp = shares(v, kOff, Rationality::finite(1e6));
    const auto exact = shares(v, kOff, Rationality::perfect());
    for (std::size_t k = 0; k < v.size(); ++k) {
      CHECK(near(sharp.provider_shares[k], exact.provider_shares[k], 1e-6));
    }
  }
}

TEST_CASE("common shift leaves finite shares unchanged") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> v(1 + t % 5), w;
    for (auto& x : v) x = u(rng);
    const double shift = 10.0 * u(rng);
    for (const double x : v) w.push_back(x + shift);
    const double v0 = u(rng);
    const auto rat = Rationality::finite(0.5 + 20.0 * (1.0 + u(rng)));
    const auto a = shares(v, AbstentionPolicy::value(v0), rat);
    const auto b = shares(w, AbstentionPolicy::value(v0 + shift), rat);
    for (std::size_t k = 0; k < v.size(); ++k) {
      CHECK(near(a.provider_shares[k], b.provider_shares[k]));
    }
    CHECK(near(a.abstention_share, b.abstention_share));
  }
}

TEST_CASE("concentration bound") {
  CHECK(near(softmax_concentration_bound(std::vector<double>{1.0, 0.0}, 1.0),
             std::exp(-1.0), 1e-15));
  CHECK(softmax_concentration_bound(std::vector<double>{1.0, 0.0, -1.0}, 1e4) ==
        0.0);
  CHECK(softmax_concentration_bound(std::vector<double>{0.3}, 2.0) == 0.0);
  CHECK_THROWS_AS(softmax_concentration_bound(std::vector<double>{1.0, 1.0}, 1.0),
                  InvalidArgument);
  CHECK_THROWS_AS(softmax_concentration_bound(std::vector<double>{1.0, 0.0}, 0.0),
                  InvalidArgument);
}

TEST_CASE("log-sum-exp") {
  CHECK(near(log_sum_exp(std::vector<double>{0.0, 0.0}), std::log(2.0)));
  CHECK(near(log_sum_exp(std::vector<double>{1e6, 1e6}), 1e6 + std::log(2.0),
             1e-9));
  CHECK(near(log_sum_exp(std::vector<double>{-INFINITY, 2.0}), 2.0));
  CHECK(log_sum_exp(std::vector<double>{-INFINITY, -INFINITY}) == -INFINITY);
}

TEST_CASE("softmax property suite") {
  const auto r = testing::softmax_suite(300, 17);
  INFO(r.summary());
  CHECK(r.ok());
}
