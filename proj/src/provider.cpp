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

#include "ttc/provider.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ttc/errors.hpp"

namespace ttc {

bool has_errors(std::span<const Finding> findings) {
  return std::any_of(findings.begin(), findings.end(), [](const Finding& f) {
    return f.severity == Finding::Severity::kError;
  });
}

ProviderProfile::ProviderProfile(std::string id,
                                 std::vector<std::string> labels,
                                 std::vector<Usd> quality,
                                 std::vector<Usd> price, std::vector<Usd> cost)
    : id_(std::move(id)),
      labels_(std::move(labels)),
      quality_(std::move(quality)),
      price_(std::move(price)),
      cost_(std::move(cost)) {
  const auto n = quality_.size();
  if (labels_.size() != n || price_.size() != n || cost_.size() != n) {
    throw InvalidArgument("provider '" + id_ +
                          "': labels, quality, price and cost must have the "
                          "same length");
  }
}

void ProviderProfile::check(Level ordinal) const {
  if (ordinal >= quality_.size()) {
    throw InvalidArgument("provider '" + id_ + "' has no compute level " +
                          std::to_string(ordinal) + " (it has " +
                          std::to_string(quality_.size()) + ")");
  }
}

ComputeLevel ProviderProfile::level(Level ordinal) const {
  check(ordinal);
  return {ordinal, labels_[ordinal]};
}

Usd ProviderProfile::quality(Level ordinal) const {
  check(ordinal);
  return quality_[ordinal];
}

Usd ProviderProfile::price(Level ordinal) const {
  check(ordinal);
  return price_[ordinal];
}

Usd ProviderProfile::cost(Level ordinal) const {
  check(ordinal);
  return cost_[ordinal];
}

Usd ProviderProfile::profit(Level ordinal) const {
  check(ordinal);
  return price_[ordinal] - cost_[ordinal];
}

Usd user_value(const ProviderProfile& profile, Level level) {
  return profile.quality(level) - profile.price(level);
}

Usd welfare_contribution(const ProviderProfile& profile, Level level) {
  return profile.quality(level) - profile.cost(level);
}

namespace {

template <typename F>
LevelChoice argmax_levels(const ProviderProfile& profile, F&& score) {
  if (profile.empty()) {
    throw InvalidArgument("provider '" + profile.id() + "' has no levels");
  }
  LevelChoice best{0, score(profile, 0), false};
  for (Level k = 1; k < profile.num_levels(); ++k) {
    const Usd v = score(profile, k);
    if (v > best.value) {
      best.level = k;
      best.value = v;
    }
  }
  for (Level k = 0; k < profile.num_levels(); ++k) {
    if (k != best.level &&
        std::abs(score(profile, k) - best.value) <= kMoneyTolerance) {
      best.tie = true;
    }
  }
  return best;
}

}  // namespace

LevelChoice max_user_value(const ProviderProfile& profile) {
  return argmax_levels(profile, user_value);
}

LevelChoice welfare_optimal_level(const ProviderProfile& profile) {
  return argmax_levels(profile, welfare_contribution);
}

std::vector<Finding> validate_profile(const ProviderProfile& profile,
                                      ValidationMode mode) {
  using Severity = Finding::Severity;
  std::vector<Finding> out;
  const auto& id = profile.id();
  if (profile.empty()) {
    out.push_back({Severity::kError, std::nullopt,
                   "provider '" + id + "' has no compute levels"});
    return out;
  }

  const auto q = profile.qualities();
  const auto p = profile.prices();
  const auto c = profile.costs();
  for (Level k = 0; k < profile.num_levels(); ++k) {
    std::ostringstream where;
    where << "provider '" << id << "' level " << k;
    if (!std::isfinite(q[k]) || !std::isfinite(p[k]) || !std::isfinite(c[k])) {
      out.push_back({Severity::kError, k, where.str() + ": non-finite amount"});
      continue;
    }
    if (q[k] < 0.0) {
      out.push_back({Severity::kError, k, where.str() + ": negative quality"});
    }
    if (!(c[k] > 0.0)) {
      out.push_back({Severity::kError, k,
                     where.str() + ": cost must be positive"});
    }
    if (!(p[k] > c[k])) {
      out.push_back({Severity::kError, k,
                     where.str() + ": price must exceed cost (profit " +
                         std::to_string(p[k] - c[k]) + ")"});
    }
  }

  const auto soft =
      mode == ValidationMode::kStrict ? Severity::kError : Severity::kWarning;
  for (Level k = 1; k < profile.num_levels(); ++k) {
    std::ostringstream where;
    where << "provider '" << id << "' levels " << k - 1 << "->" << k;
    if (q[k] < q[k - 1]) {
      out.push_back({soft, k, where.str() + ": quality decreases"});
    }
    if (!(p[k] - c[k] > p[k - 1] - c[k - 1])) {
      out.push_back({soft, k, where.str() + ": profit does not increase"});
    }
  }
  return out;
}

}  // namespace ttc
