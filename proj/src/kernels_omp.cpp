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

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "ttc/errors.hpp"
#include "ttc/kernels.hpp"

namespace ttc {

namespace {

constexpr std::uint64_t kChunk = std::uint64_t{1} << 15;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_budget(const GameInstance& game, const ScanOptions& options) {
  const auto total = game.num_profiles();
  if (total > options.budget) throw BudgetExceeded(total, options.budget);
}

int worker_count(const ScanOptions& options) {
  return options.workers > 0 ? options.workers : omp_get_max_threads();
}

// Mixed-radix counter over the strategy space, last provider fastest.
class Odometer {
 public:
  Odometer(const GameInstance& game, std::uint64_t start)
      : levels_(game.num_providers()), radix_(game.num_providers()) {
    for (std::size_t i = 0; i < radix_.size(); ++i) {
      radix_[i] = game.provider(i).num_levels();
    }
    for (std::size_t i = radix_.size(); i-- > 0;) {
      levels_[i] = start % radix_[i];
      start /= radix_[i];
    }
  }

  std::span<const Level> levels() const noexcept { return levels_; }

  void advance() {
    for (std::size_t i = radix_.size(); i-- > 0;) {
      if (++levels_[i] < radix_[i]) return;
      levels_[i] = 0;
    }
  }

 private:
  std::vector<Level> levels_;
  std::vector<std::size_t> radix_;
};

// Per-thread equilibrium test. Provider i's share at a deviation depends on
// the others only through the maximum m of their scaled values (and V0) and
// Z = sum_j exp(beta v_j - m), which are assembled once per candidate;
// each deviation then costs one exponential.
class NashChecker {
 public:
  explicit NashChecker(const GameInstance& game)
      : n_(game.num_providers()),
        perfect_(game.rationality().is_perfect()),
        abstain_(game.abstention().enabled()),
        v0_(abstain_ ? game.abstention().v0() : -kInf),
        current_(n_),
        weight_(n_),
        prefix_(n_),
        suffix_(n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      const auto v = game.values(i);
      profit_.emplace_back(game.profits(i).begin(), game.profits(i).end());
      value_.emplace_back(v.begin(), v.end());
      if (!perfect_) {
        const double beta = game.rationality().beta();
        std::vector<double> scaled(v.size());
        for (std::size_t k = 0; k < v.size(); ++k) scaled[k] = beta * v[k];
        scaled_.push_back(std::move(scaled));
      }
    }
    if (!perfect_) scaled_v0_ = abstain_ ? game.rationality().beta() * v0_ : -kInf;
  }

  bool operator()(std::span<const Level> levels) {
    return perfect_ ? check_perfect(levels) : check_finite(levels);
  }

 private:
  bool check_perfect(std::span<const Level> levels) {
    for (std::size_t i = 0; i < n_; ++i) current_[i] = value_[i][levels[i]];
    double run = -kInf;
    for (std::size_t i = 0; i < n_; ++i) {
      prefix_[i] = run;
      run = std::max(run, current_[i]);
    }
    run = -kInf;
    for (std::size_t i = n_; i-- > 0;) {
      suffix_[i] = run;
      run = std::max(run, current_[i]);
    }
    for (std::size_t i = 0; i < n_; ++i) {
      // Lowest index wins ties among providers; providers win ties with V0.
      const auto wins = [&](double v) {
        return v > prefix_[i] && v >= suffix_[i] && v >= v0_;
      };
      const auto& profit = profit_[i];
      const double now = wins(current_[i]) ? profit[levels[i]] : 0.0;
      for (Level k = 0; k < profit.size(); ++k) {
        if (k == levels[i]) continue;
        if (profit[k] > now + kImprovementThreshold && wins(value_[i][k])) {
          return false;
        }
      }
    }
    return true;
  }

  static double share(double d, double z) {
    if (d > 0.0) return 1.0 / (1.0 + z * std::exp(-d));
    const double e = std::exp(d);
    return e / (z + e);
  }

  bool check_finite(std::span<const Level> levels) {
    std::size_t top = n_;  // n_ stands for the outside option
    double top_value = scaled_v0_;
    for (std::size_t i = 0; i < n_; ++i) {
      current_[i] = scaled_[i][levels[i]];
      if (top == n_ ? current_[i] >= top_value : current_[i] > top_value) {
        top = i;
        top_value = current_[i];
      }
    }
    for (std::size_t i = 0; i < n_; ++i) {
      weight_[i] = std::exp(current_[i] - top_value);
    }
    const double w0 = abstain_ ? std::exp(scaled_v0_ - top_value) : 0.0;

    for (std::size_t i = 0; i < n_; ++i) {
      double m = top_value;
      double z = 0.0;
      if (i == top) {
        // Re-centre on the best competitor so Z keeps at least one unit term.
        m = scaled_v0_;
        for (std::size_t j = 0; j < n_; ++j) {
          if (j != i) m = std::max(m, current_[j]);
        }
        if (m == -kInf) {
          z = 0.0;
        } else {
          for (std::size_t j = 0; j < n_; ++j) {
            if (j != i) z += std::exp(current_[j] - m);
          }
          if (abstain_) z += std::exp(scaled_v0_ - m);
        }
      } else {
        // Summed afresh rather than total - weight_i, which cancels badly
        // when provider i dominates the total.
        z = w0;
        for (std::size_t j = 0; j < n_; ++j) {
          if (j != i) z += weight_[j];
        }
      }

      const auto& profit = profit_[i];
      const auto& scaled = scaled_[i];
      const auto share_at = [&](double x) {
        return m == -kInf ? 1.0 : share(x - m, z);
      };
      const double now = share_at(current_[i]) * profit[levels[i]];
      for (Level k = 0; k < profit.size(); ++k) {
        if (k == levels[i] || !(profit[k] > now + kImprovementThreshold)) {
          continue;
        }
        if (share_at(scaled[k]) * profit[k] > now + kImprovementThreshold) {
          return false;
        }
      }
    }
    return true;
  }

  std::size_t n_;
  bool perfect_;
  bool abstain_;
  double v0_;
  double scaled_v0_ = -kInf;
  std::vector<std::vector<double>> value_;
  std::vector<std::vector<double>> scaled_;
  std::vector<std::vector<double>> profit_;
  std::vector<double> current_;
  std::vector<double> weight_;
  std::vector<double> prefix_;
  std::vector<double> suffix_;
};

}  // namespace

std::vector<std::uint64_t> enumerate_equilibrium_indices(
    const GameInstance& game, const ScanOptions& options) {
  check_budget(game, options);
  const std::uint64_t total = game.num_profiles();
  const std::int64_t chunks =
      static_cast<std::int64_t>((total + kChunk - 1) / kChunk);
  std::vector<std::vector<std::uint64_t>> found(chunks);

#pragma omp parallel num_threads(worker_count(options))
  {
    NashChecker is_equilibrium(game);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
      const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
      const std::uint64_t end = std::min(total, begin + kChunk);
      Odometer odo(game, begin);
      for (std::uint64_t idx = begin; idx < end; ++idx, odo.advance()) {
        if (is_equilibrium(odo.levels())) found[c].push_back(idx);
      }
    }
  }

  std::vector<std::uint64_t> out;
  for (auto& part : found) out.insert(out.end(), part.begin(), part.end());
  return out;
}

std::vector<StrategyProfile> enumerate_equilibria(const GameInstance& game,
                                                  const ScanOptions& options) {
  const auto indices = enumerate_equilibrium_indices(game, options);
  std::vector<StrategyProfile> out;
  out.reserve(indices.size());
  for (const auto idx : indices) out.push_back(decode_profile(game, idx));
  return out;
}

WelfareOptimum max_social_welfare(const GameInstance& game,
                                  const ScanOptions& options) {
  check_budget(game, options);
  const std::uint64_t total = game.num_profiles();
  const auto n = game.num_providers();
  const std::int64_t chunks =
      static_cast<std::int64_t>((total + kChunk - 1) / kChunk);
  std::vector<std::uint64_t> best_index(chunks);
  std::vector<Usd> best_welfare(chunks, -kInf);

#pragma omp parallel num_threads(worker_count(options))
  {
    std::vector<Usd> values(n);
    std::vector<double> share(n);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
      const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
      const std::uint64_t end = std::min(total, begin + kChunk);
      Odometer odo(game, begin);
      for (std::uint64_t idx = begin; idx < end; ++idx, odo.advance()) {
        const Usd w = detail::welfare_at(game, odo.levels(), values, share);
        if (idx == begin || w > best_welfare[c]) {
          best_welfare[c] = w;
          best_index[c] = idx;
        }
      }
    }
  }

  std::int64_t winner = 0;
  for (std::int64_t c = 1; c < chunks; ++c) {
    if (best_welfare[c] > best_welfare[winner]) winner = c;
  }
  return {decode_profile(game, best_index[winner]), best_welfare[winner]};
}

}  // namespace ttc
