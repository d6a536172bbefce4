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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "properties.hpp"
#include "ttc/auction.hpp"
#include "ttc/game.hpp"
#include "ttc/kernels.hpp"
#include "ttc/welfare.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ttc;
using ttc::testing::Stopwatch;
using ttc::testing::SuiteResult;

namespace {

constexpr double kExact = 1e-9;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ttcgame");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code =
      cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) {
  return std::string(TTC_DATA_DIR) + "/" + name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

GameInstance load_game(const std::string& config) {
  const auto cfg = cli::load_game_config(data(config));
  const auto rs = select_records(load_evaluation_csv(cfg.evaluations),
                                 cfg.dataset, cfg.method);
  return build_game(rs, load_pricing_json(cfg.pricing), cfg.build);
}

// Collects mismatches for one criterion.
struct Check {
  std::vector<std::string> problems;

  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
  void near(double got, double want, const std::string& what,
            double tol = kExact) {
    if (!(std::abs(got - want) <= tol)) {
      std::ostringstream s;
      s.precision(17);
      s << what << ": got " << got << ", want " << want;
      problems.push_back(s.str());
    }
  }
};

int failures = 0;

void report(int n, const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!ok) ++failures;
}

void report(int n, const std::string& name, const Check& c, double seconds,
            double limit) {
  std::ostringstream d;
  d << seconds << " s";
  bool ok = c.problems.empty();
  if (seconds >= limit) {
    ok = false;
    d << ", limit " << limit << " s";
  }
  for (const auto& p : c.problems) d << "; " << p;
  report(n, name, ok, d.str());
}

void report(int n, const std::string& name, const SuiteResult& r,
            std::size_t min_instances, double limit) {
  bool ok = r.ok() && r.instances >= min_instances;
  std::string detail = r.summary();
  if (r.seconds >= limit) {
    ok = false;
    detail += ", limit " + std::to_string(limit) + " s";
  }
  report(n, name, ok, detail);
}

template <typename F>
void guarded(int n, const std::string& name, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(n, name, false, std::string("exception: ") + e.what());
  }
}

void criterion_1() {
  const std::string name = "worked example regression";
  guarded(1, name, [&] {
    Stopwatch clock;
    Check c;
    const auto game = load_game("worked_example.json");
    c.expect(game.rationality().is_perfect(), "rationality is not perfect");
    const double values[] = {game.values(0)[0], game.values(0)[1],
                             game.values(1)[0], game.values(1)[1]};
    const double want_values[] = {1.0875, 0.55, 0.375, -10.6};
    for (int k = 0; k < 4; ++k) {
      c.near(values[k], want_values[k], "value " + std::to_string(k));
    }
    const StrategyProfile low{{0, 0}}, eq{{1, 0}};
    c.near(utility(game, low, 0), 0.0625, "utility at (Low, Low)");
    c.near(utility(game, eq, 0), 0.25, "utility at (High, Low)");
    c.near(social_welfare(game, low), 1.15, "welfare at (Low, Low)");
    c.near(social_welfare(game, eq), 0.8, "welfare at (High, Low)");

    const auto r = cli({"simulate", data("worked_example.json")});
    c.expect(r.code == cli::kExitOk, "simulate exit " + std::to_string(r.code));
    const auto s = json::parse(r.out);
    c.expect(s["equilibrium"]["levels"] == json({1, 0}),
             "equilibrium " + s["equilibrium"]["levels"].dump());
    c.expect(s["equilibrium"]["labels"][0] == "High", "leader not at High");
    c.near(s["max_welfare"].get<double>(), 1.15, "max welfare");
    c.near(s["equilibrium"]["welfare"].get<double>(), 0.8, "eq welfare");
    c.near(s["equilibrium"]["utilities"][0].get<double>(), 0.25,
           "eq utility");
    c.near(s["poa"].get<double>(), 1.4375, "PoA");
    report(1, name, c, clock.seconds(), 1.0);
  });
}

void criterion_2() {
  const std::string name = "worked example auction";
  guarded(2, name, [&] {
    Stopwatch clock;
    Check c;
    const auto r = cli({"auction", data("worked_example.json")});
    c.expect(r.code == cli::kExitOk, "auction exit " + std::to_string(r.code));
    const auto doc = json::parse(r.out);
    const auto& o = doc["outcome"];
    c.expect(o["winner"] == 0, "winner " + o["winner"].dump());
    c.near(o["payment"].get<double>(), 0.9, "payment");
    c.near(o["winner_utility"].get<double>(), 0.65, "winner utility");
    c.near(o["user_net_value"].get<double>(), 0.5, "user net value");
    c.near(o["welfare"].get<double>(), 1.15, "welfare");
    c.expect(doc["auction_poa"].is_number() && doc["auction_poa"] == 1.0,
             "auction PoA " + doc["auction_poa"].dump());
    report(2, name, c, clock.seconds(), 1.0);
  });
}

void criterion_9() {
  const std::string name = "9x7 scale";
  guarded(9, name, [&] {
    Stopwatch clock;
    Check c;
    const auto game = load_game("synthetic_9x7.json");
    c.expect(game.num_profiles() == 40'353'607,
             "profiles " + std::to_string(game.num_profiles()));
    c.expect(!game.rationality().is_perfect() && game.rationality().beta() == 1000.0,
             "config beta is not 1000");
    const auto opt = max_social_welfare(game);
    const auto eqs = enumerate_equilibria(game);
    c.expect(!eqs.empty(), "no pure equilibrium found");
    const double scan_seconds = clock.seconds();

    const auto dir = fs::temp_directory_path() /
                     ("ttc_accept_" + std::to_string(std::random_device{}()));
    bool all_converged = true;
    for (const char* seed : {"1", "2"}) {
      std::vector<std::string> outs;
      for (const char* run : {"a", "b"}) {
        const auto out = dir / (std::string(seed) + run);
        const auto r = cli({"simulate", data("synthetic_9x7.json"), "--seed",
                            seed, "--out", out.string()});
        all_converged = all_converged && r.code == cli::kExitOk;
        outs.push_back(slurp(out / "trace.csv") + slurp(out / "trace.json") +
                       slurp(out / "summary.json"));
      }
      c.expect(!outs[0].empty() && outs[0] == outs[1],
               std::string("seed ") + seed + " outputs differ between runs");
    }
    c.expect(all_converged, "dynamics did not converge");
    std::error_code ec;
    fs::remove_all(dir, ec);

    std::ostringstream d;
    d << "max welfare " << opt.welfare << ", " << eqs.size()
      << " equilibria, scans " << scan_seconds << " s";
    c.problems.insert(c.problems.begin(), d.str());
    const bool ok = c.problems.size() == 1;
    const double seconds = clock.seconds();
    std::ostringstream detail;
    detail << seconds << " s";
    for (const auto& p : c.problems) detail << "; " << p;
    report(9, name, ok && seconds < 600.0, detail.str());
  });
}

void criterion_10() {
  const std::string name = "synthetic inefficiency";
  guarded(10, name, [&] {
    Stopwatch clock;
    Check c;
    std::ostringstream d;
    for (const char* config : {"synthetic_9x7.json", "cot_3x5.json"}) {
      for (const char* mode : {"paper_step", "best_response"}) {
        const auto r = cli({"simulate", data(config), "--mode", mode,
                            "--seed", "3"});
        const std::string tag = std::string(config) + " " + mode;
        c.expect(r.code == cli::kExitOk, tag + " did not converge");
        if (r.code != cli::kExitOk) continue;
        const auto s = json::parse(r.out);
        const double poa = s["poa"].is_number() ? s["poa"].get<double>() : NAN;
        c.expect(poa > 1.0, tag + " PoA " + s["poa"].dump());
        d << tag << " PoA " << poa << "; ";
      }
    }
    const bool ok = c.problems.empty();
    std::string detail = d.str();
    for (const auto& p : c.problems) detail += p + "; ";
    detail += std::to_string(clock.seconds()) + " s";
    report(10, name, ok, detail);
  });
}

}  // namespace

int main() {
  using namespace ttc::testing;
  std::cout.precision(6);
  criterion_1();
  criterion_2();
  guarded(3, "potential increases", [] {
    report(3, "potential increases", potential_suite(200, 11), 201, 60.0);
  });
  guarded(4, "dominant provider", [] {
    report(4, "dominant provider", dominant_provider_suite(200, 12), 100, 1e9);
  });
  guarded(5, "dominant bids", [] {
    report(5, "dominant bids", dominant_bid_suite(100, 13), 51, 60.0);
  });
  guarded(6, "auction efficiency", [] {
    report(6, "auction efficiency", auction_efficiency_suite(500, 14), 100, 1e9);
  });
  guarded(7, "softmax bounds", [] {
    report(7, "softmax bounds", softmax_suite(5000, 15), 1000, 1e9);
  });
  guarded(8, "leading bound", [] {
    auto r = leading_bound_suite(300, 16);
    const auto game = worked_example();
    const auto b = leading_poa_bound(game, StrategyProfile{{1, 0}});
    ++r.checks;
    if (std::abs(b.leading_bound - (1.0 + 0.35 / 1.15)) > 1e-9 ||
        b.leading_bound > 1.4375) {
      r.fail("worked example bound " + std::to_string(b.leading_bound));
    }
    report(8, "leading bound", r, 301, 1e9);
  });
  criterion_9();
  criterion_10();
  return failures == 0 ? 0 : 1;
}
