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

#include <random>

#include "fixtures.hpp"
#include "random_games.hpp"
#include "ttc/errors.hpp"
#include "ttc/provider.hpp"

using namespace ttc;
using ttc::testing::kHigh;
using ttc::testing::kLow;
using ttc::testing::near;

TEST_CASE("worked example values and welfare contributions") {
  const auto ps = testing::worked_example_providers();
  CHECK(near(user_value(ps[0], kLow), 1.0875));
  CHECK(near(user_value(ps[0], kHigh), 0.55));
  CHECK(near(user_value(ps[1], kLow), 0.375));
  CHECK(near(user_value(ps[1], kHigh), -10.6));
  CHECK(near(welfare_contribution(ps[0], kLow), 1.15));
  CHECK(near(welfare_contribution(ps[0], kHigh), 0.8));
  CHECK(near(welfare_contribution(ps[1], kLow), 0.5));
  CHECK(near(welfare_contribution(ps[1], kHigh), -8.1));
}

TEST_CASE("quality equal to price gives zero value") {
  const ProviderProfile p("x", {"a"}, {0.7}, {0.7}, {0.5});
  CHECK(user_value(p, 0) == 0.0);
}

TEST_CASE("unknown level is rejected") {
  const auto ps = testing::worked_example_providers();
  CHECK_THROWS_AS(user_value(ps[0], 2), InvalidArgument);
  CHECK_THROWS_AS(welfare_contribution(ps[0], 7), InvalidArgument);
  CHECK_THROWS_AS(ps[0].level(2), InvalidArgument);
}

TEST_CASE("mismatched sequence lengths are rejected") {
  CHECK_THROWS_AS(ProviderProfile("x", {"a", "b"}, {1.0, 2.0}, {0.5}, {0.1, 0.2}),
                  InvalidArgument);
}

TEST_CASE("argmax of value and welfare") {
  const auto ps = testing::worked_example_providers();
  auto v = max_user_value(ps[0]);
  CHECK(v.level == kLow);
  CHECK(near(v.value, 1.0875));
  CHECK_FALSE(v.tie);
  v = max_user_value(ps[1]);
  CHECK(v.level == kLow);
  CHECK(near(v.value, 0.375));

  auto w = welfare_optimal_level(ps[0]);
  CHECK(w.level == kLow);
  CHECK(near(w.value, 1.15));
  w = welfare_optimal_level(ps[1]);
  CHECK(w.level == kLow);
  CHECK(near(w.value, 0.5));

  const ProviderProfile single("s", {"only"}, {2.0}, {0.5}, {0.25});
  CHECK(max_user_value(single).level == 0);
  CHECK(max_user_value(single).value == 1.5);
}

TEST_CASE("argmax ties go to the lowest ordinal and are flagged") {
  // q - c = 1 at every level.
  const ProviderProfile p("t", {"a", "b", "c"}, {1.5, 2.0, 3.0},
                          {0.6, 1.2, 2.4}, {0.5, 1.0, 2.0});
  const auto w = welfare_optimal_level(p);
  CHECK(w.level == 0);
  CHECK(w.tie);
  CHECK_THROWS_AS(max_user_value(ProviderProfile{}), InvalidArgument);
  CHECK_THROWS_AS(welfare_optimal_level(ProviderProfile{}), InvalidArgument);
}

TEST_CASE("validation") {
  const auto ps = testing::worked_example_providers();
  CHECK(validate_profile(ps[0], ValidationMode::kStrict).empty());
  CHECK(validate_profile(ps[1], ValidationMode::kStrict).empty());

  SUBCASE("zero profit is an error in both modes") {
    const ProviderProfile p("z", {"a"}, {1.0}, {0.5}, {0.5});
    CHECK(has_errors(validate_profile(p, ValidationMode::kStrict)));
    CHECK(has_errors(validate_profile(p, ValidationMode::kLenient)));
  }
  SUBCASE("non-positive cost is an error") {
    const ProviderProfile p("z", {"a"}, {1.0}, {0.5}, {0.0});
    CHECK(has_errors(validate_profile(p, ValidationMode::kLenient)));
  }
  SUBCASE("decreasing quality: error when strict, warning when lenient") {
    const ProviderProfile p("d", {"a", "b"}, {1.0, 0.9}, {0.2, 0.4},
                            {0.1, 0.2});
    CHECK(has_errors(validate_profile(p, ValidationMode::kStrict)));
    const auto lenient = validate_profile(p, ValidationMode::kLenient);
    REQUIRE(lenient.size() == 1);
    CHECK(lenient[0].severity == Finding::Severity::kWarning);
    CHECK(lenient[0].level == 1);
  }
  SUBCASE("non-increasing profit: error when strict, warning when lenient") {
    const ProviderProfile p("f", {"a", "b"}, {1.0, 1.2}, {0.3, 0.35},
                            {0.1, 0.2});
    CHECK(has_errors(validate_profile(p, ValidationMode::kStrict)));
    CHECK_FALSE(has_errors(validate_profile(p, ValidationMode::kLenient)));
  }
  SUBCASE("non-finite entries are errors") {
    const ProviderProfile p("n", {"a"}, {NAN}, {0.3}, {0.1});
    CHECK(has_errors(validate_profile(p, ValidationMode::kLenient)));
  }
  SUBCASE("empty profile is an error") {
    CHECK(has_errors(validate_profile(ProviderProfile{}, ValidationMode::kLenient)));
  }
}

TEST_CASE("algebraic identities hold on random profiles") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = testing::random_provider(rng, "r", 1 + trial % 6);
    CHECK(validate_profile(p, ValidationMode::kStrict).empty());
    const auto best_v = max_user_value(p);
    const auto best_w = welfare_optimal_level(p);
    for (Level k = 0; k < p.num_levels(); ++k) {
      CHECK(user_value(p, k) + p.price(k) == doctest::Approx(p.quality(k)).epsilon(1e-15));
      CHECK(welfare_contribution(p, k) + p.cost(k) ==
            doctest::Approx(p.quality(k)).epsilon(1e-15));
      CHECK(best_v.value >= user_value(p, k));
      CHECK(best_w.value >= welfare_contribution(p, k));
      if (k > 0) {
        const double dv = user_value(p, k) - user_value(p, k - 1);
        const double expect = (p.quality(k) - p.quality(k - 1)) -
                              (p.price(k) - p.price(k - 1));
        CHECK(near(dv, expect, 1e-12));
      }
    }
  }
}
