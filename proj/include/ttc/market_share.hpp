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

#include <optional>
#include <span>
#include <vector>

#include "ttc/provider.hpp"

namespace ttc {

// User rationality: either perfectly rational (indicator on the best value)
// or boundedly rational with inverse temperature beta > 0.
class Rationality {
 public:
  static Rationality perfect() { return Rationality{}; }
  // Throws InvalidArgument unless beta is finite and positive.
  static Rationality finite(double beta);

  bool is_perfect() const noexcept { return !beta_.has_value(); }
  // Throws InvalidArgument when perfect.
  double beta() const;

  friend bool operator==(const Rationality&, const Rationality&) = default;

 private:
  Rationality() = default;
  std::optional<double> beta_;
};

// Outside option. Disabled behaves as V0 = -infinity.
class AbstentionPolicy {
 public:
  static AbstentionPolicy value(Usd v0);
  static AbstentionPolicy disabled() { return AbstentionPolicy{}; }

  bool enabled() const noexcept { return v0_.has_value(); }
  // Throws InvalidArgument when disabled.
  Usd v0() const;

  friend bool operator==(const AbstentionPolicy&,
                         const AbstentionPolicy&) = default;

 private:
  AbstentionPolicy() = default;
  std::optional<Usd> v0_;
};

struct ShareVector {
  std::vector<double> provider_shares;
  double abstention_share = 0.0;
  // Perfect rationality only: the maximum was attained by more than one
  // alternative and the lowest provider index was chosen.
  bool tie = false;
};

// Demand split across providers and the outside option.
//
// Perfect: all demand to the maximizer over provider values and V0; among
// tied providers the lowest index wins, and abstention wins only when V0 is
// strictly above every provider value.
//
// Finite(beta): softmax over (beta * values, beta * V0), shifted by the
// maximum so that beta * value of order 1e6 neither overflows nor produces
// 0/0.
//
// Throws InvalidArgument on an empty or non-finite input.
ShareVector shares(std::span<const Usd> values,
                   const AbstentionPolicy& abstention,
                   const Rationality& rationality);

namespace detail {

// Allocation-free core of shares(): writes provider shares into `out`
// (same length as `values`) and returns the abstention share. Inputs are
// not validated. `tie` may be null.
double fill_shares(std::span<const Usd> values,
                   const AbstentionPolicy& abstention,
                   const Rationality& rationality, std::span<double> out,
                   bool* tie = nullptr);

}  // namespace detail

// log(sum(exp(x))) evaluated with a max shift. Entries equal to -inf are
// allowed and contribute nothing; an all -inf input yields -inf.
double log_sum_exp(std::span<const double> x);

// (N - 1) * exp(-beta * (x_(1) - x_(2))), the uniform distance between a
// softmax over strictly ordered values and the indicator of the maximum.
// Throws InvalidArgument on repeated values or a non-positive beta.
double softmax_concentration_bound(std::span<const double> values,
                                   double beta);

}  // namespace ttc
