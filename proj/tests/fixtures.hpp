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

#include <cmath>
#include <vector>

#include "ttc/game.hpp"

namespace ttc::testing {

// The two-provider, two-level worked example: provider 1 (index 0) and
// provider 2 (index 1), levels Low and High.
inline std::vector<ProviderProfile> worked_example_providers() {
  return {
      ProviderProfile("provider_1", {"Low", "High"}, {1.4, 1.8}, {0.3125, 1.25},
                      {0.25, 1.0}),
      ProviderProfile("provider_2", {"Low", "High"}, {1.0, 1.9}, {0.625, 12.5},
                      {0.5, 10.0}),
  };
}

inline GameInstance worked_example(
    AbstentionPolicy abstention = AbstentionPolicy::disabled(),
    Rationality rationality = Rationality::perfect()) {
  return GameInstance(worked_example_providers(), abstention, rationality);
}

inline constexpr Level kLow = 0;
inline constexpr Level kHigh = 1;

inline bool near(double a, double b, double tol = 1e-12) {
  return std::abs(a - b) <= tol;
}

}  // namespace ttc::testing
