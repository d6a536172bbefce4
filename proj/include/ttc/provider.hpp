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
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ttc {

// Monetary amounts are plain doubles in USD.
using Usd = double;

// Position of a compute level in a provider's ordered menu.
using Level = std::size_t;

// Absolute tolerance used to flag near-ties and to compare data-derived
// amounts.
inline constexpr double kMoneyTolerance = 1e-9;

struct ComputeLevel {
  Level ordinal = 0;
  std::string label;
};

enum class ValidationMode { kStrict, kLenient };

struct Finding {
  enum class Severity { kWarning, kError };

  Severity severity = Severity::kError;
  std::optional<Level> level;
  std::string message;
};

bool has_errors(std::span<const Finding> findings);

// Per-level quality, price and generation cost of one provider's model.
// Ordinals are implicit: level k is the k-th entry of each sequence, and the
// compute order is ordinal order.
class ProviderProfile {
 public:
  ProviderProfile() = default;

  // Throws InvalidArgument if the four sequences differ in length.
  ProviderProfile(std::string id, std::vector<std::string> labels,
                  std::vector<Usd> quality, std::vector<Usd> price,
                  std::vector<Usd> cost);

  const std::string& id() const noexcept { return id_; }
  std::size_t num_levels() const noexcept { return quality_.size(); }
  bool empty() const noexcept { return quality_.empty(); }

  // Throws InvalidArgument for an unknown ordinal.
  ComputeLevel level(Level ordinal) const;
  Usd quality(Level ordinal) const;
  Usd price(Level ordinal) const;
  Usd cost(Level ordinal) const;
  Usd profit(Level ordinal) const;

  std::span<const std::string> labels() const noexcept { return labels_; }
  std::span<const Usd> qualities() const noexcept { return quality_; }
  std::span<const Usd> prices() const noexcept { return price_; }
  std::span<const Usd> costs() const noexcept { return cost_; }

 private:
  void check(Level ordinal) const;

  std::string id_;
  std::vector<std::string> labels_;
  std::vector<Usd> quality_;
  std::vector<Usd> price_;
  std::vector<Usd> cost_;
};

// Value offered to users: quality minus price.
Usd user_value(const ProviderProfile& profile, Level level);

// Standalone welfare contribution: quality minus generation cost.
Usd welfare_contribution(const ProviderProfile& profile, Level level);

// Result of an argmax over a provider's levels. `tie` is set when another
// level comes within kMoneyTolerance of the maximum; the lowest ordinal
// attaining the exact maximum is returned either way.
struct LevelChoice {
  Level level = 0;
  Usd value = 0.0;
  bool tie = false;
};

LevelChoice max_user_value(const ProviderProfile& profile);
LevelChoice welfare_optimal_level(const ProviderProfile& profile);

// Checks the structural invariants (equal lengths, positive cost, price above
// cost, finite entries) as hard errors, and the monotonicity of quality and
// profit as errors in strict mode or warnings in lenient mode.
std::vector<Finding> validate_profile(const ProviderProfile& profile,
                                      ValidationMode mode);

}  // namespace ttc
