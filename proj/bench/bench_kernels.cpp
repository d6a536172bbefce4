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

// Times the serial reference scans against the OpenMP kernels on one game
// and checks that both agree.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <iostream>

#include "cli.hpp"
#include "ttc/ingest.hpp"
#include "ttc/kernels.hpp"

namespace {

template <typename F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reference vs parallel scan benchmark", "bench_kernels"};
  std::string config;
  std::string beta;
  int workers = 0;
  bool skip_reference = false;
  std::uint64_t budget = ttc::kDefaultScanBudget;
  app.add_option("config", config, "Game config JSON")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--beta", beta, "Override rationality (number or inf)");
  app.add_option("--workers", workers, "Worker threads, 0 for the default");
  app.add_option("--budget", budget, "Profile budget");
  app.add_flag("--skip-reference", skip_reference,
               "Time only the parallel kernels");
  CLI11_PARSE(app, argc, argv);

  const auto cfg = ttc::cli::load_game_config(config);
  auto build = cfg.build;
  if (!beta.empty()) build.rationality = ttc::cli::parse_beta(beta);
  const auto records = ttc::select_records(
      ttc::load_evaluation_csv(cfg.evaluations), cfg.dataset, cfg.method);
  const auto game =
      ttc::build_game(records, ttc::load_pricing_json(cfg.pricing), build);
  const ttc::ScanOptions options{budget, workers};

  std::printf("profiles      %llu\n",
              static_cast<unsigned long long>(game.num_profiles()));
  std::printf("rationality   %s\n",
              game.rationality().is_perfect()
                  ? "perfect"
                  : std::to_string(game.rationality().beta()).c_str());

  std::vector<ttc::StrategyProfile> eq;
  ttc::WelfareOptimum opt;
  const double t_eq = seconds([&] { eq = ttc::enumerate_equilibria(game, options); });
  const double t_sw = seconds([&] { opt = ttc::max_social_welfare(game, options); });
  std::printf("parallel      equilibria %.3f s (%zu found), max welfare %.3f s\n",
              t_eq, eq.size(), t_sw);
  if (skip_reference) return 0;

  std::vector<ttc::StrategyProfile> ref_eq;
  ttc::WelfareOptimum ref_opt;
  const double r_eq = seconds(
      [&] { ref_eq = ttc::reference::enumerate_equilibria(game, budget); });
  const double r_sw = seconds(
      [&] { ref_opt = ttc::reference::max_social_welfare(game, budget); });
  std::printf("reference     equilibria %.3f s (%zu found), max welfare %.3f s\n",
              r_eq, ref_eq.size(), r_sw);
  std::printf("speedup       equilibria %.2fx, max welfare %.2fx\n", r_eq / t_eq,
              r_sw / t_sw);

  const bool same = ref_eq == eq && ref_opt.profile == opt.profile &&
                    ref_opt.welfare == opt.welfare;
  std::printf("agreement     %s\n", same ? "yes" : "NO");
  return same ? 0 : 1;
}
