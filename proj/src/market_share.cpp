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

#include "ttc/market_share.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ttc/errors.hpp"

namespace ttc {

Rationality Rationality::finite(double beta) {
  if (!std::isfinite(beta) || !(beta > 0.0)) {
    throw InvalidArgument("beta must be finite and positive, got " +
                          std::to_string(beta));
  }
  Rationality r;
  r.beta_ = beta;
  return r;
}

double Rationality::beta() const {
  if (!beta_) throw InvalidArgument("perfect rationality has no finite beta");
  return *beta_;
}

AbstentionPolicy AbstentionPolicy::value(Usd v0) {
  if (!std::isfinite(v0)) {
    throw InvalidArgument("abstention value must be finite");
  }
  AbstentionPolicy a;
  a.v0_ = v0;
  return a;
}

Usd AbstentionPolicy::v0() const {
  if (!v0_) throw InvalidArgument("abstention is disabled");
  return *v0_;
}

namespace detail {

double fill_shares(std::span<const Usd> values,
                   const AbstentionPolicy& abstention,
                   const Rationality& rationality, std::span<double> out,
                   bool* tie) {
  const std::size_t n = values.size();
  std::fill(out.begin(), out.end(), 0.0);

  if (rationality.is_perfect()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (values[i] > values[best]) best = i;
    }
    bool tied = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != best && values[i] == values[best]) tied = true;
    }
    double abstain = 0.0;
    if (abstention.enabled() && abstention.v0() > values[best]) {
      abstain = 1.0;
      tied = false;
    } else {
      if (abstention.enabled() && abstention.v0() == values[best]) tied = true;
      out[best] = 1.0;
    }
    if (tie) *tie = tied;
    return abstain;
  }

  if (tie) *tie = false;
  const double beta = rationality.beta();
  double top = beta * values[0];
  for (std::size_t i = 1; i < n; ++i) top = std::max(top, beta * values[i]);
  if (abstention.enabled()) top = std::max(top, beta * abstention.v0());

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::exp(beta * values[i] - top);
    total += out[i];
  }
  double abstain = 0.0;
  if (abstention.enabled()) {
    abstain = std::exp(beta * abstention.v0() - top);
    total += abstain;
  }
  for (std::size_t i = 0; i < n; ++i) out[i] /= total;
  return abstain / total;
}

}  // namespace detail

ShareVector shares(std::span<const Usd> values,
                   const AbstentionPolicy& abstention,
                   const Rationality& rationality) {
  if (values.empty()) throw InvalidArgument("shares: no provider values");
  for (const Usd v : values) {
    if (!std::isfinite(v)) throw InvalidArgument("shares: non-finite value");
  }
  ShareVector out;
  out.provider_shares.resize(values.size());
  out.abstention_share = detail::fill_shares(
      values, abstention, rationality, out.provider_shares, &out.tie);
  return out;
}

double log_sum_exp(std::span<const double> x) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  double top = kNegInf;
  for (const double v : x) top = std::max(top, v);
  if (top == kNegInf) return kNegInf;
  double total = 0.0;
  for (const double v : x) total += std::exp(v - top);
  return top + std::log(total);
}

double softmax_concentration_bound(std::span<const double> values,
                                   double beta) {
  if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
  if (values.empty()) throw InvalidArgument("no values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("softmax bound requires distinct values");
  }
  if (sorted.size() == 1) return 0.0;
  return static_cast<double>(sorted.size() - 1) *
         std::exp(-beta * (sorted[0] - sorted[1]));
}

}  // namespace ttc
