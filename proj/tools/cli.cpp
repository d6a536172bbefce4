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

#include "cli.hpp"

#include <omp.h>
#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "ttc/auction.hpp"
#include "ttc/dynamics.hpp"
#include "ttc/errors.hpp"
#include "ttc/kernels.hpp"
#include "ttc/serialize.hpp"
#include "ttc/welfare.hpp"

namespace ttc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double parse_beta_value(const std::string& raw) {
  const std::string text = lower(trim(raw));
  if (text == "inf" || text == "infinity") {
    return std::numeric_limits<double>::infinity();
  }
  double beta = 0.0;
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), beta);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
    throw InvalidArgument("cannot parse beta '" + raw + "'");
  }
  if (std::isnan(beta) || !(beta > 0.0)) {
    throw InvalidArgument("beta must be positive, got '" + raw + "'");
  }
  return beta;
}

Rationality rationality_of(double beta) {
  return std::isinf(beta) ? Rationality::perfect() : Rationality::finite(beta);
}

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  std::uint64_t out = 0;
  const std::string s(v);
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw InvalidArgument(std::string(name) + " must be a non-negative integer");
  }
  return out;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

// Options shared by every subcommand.
struct Common {
  std::string config;
  std::string beta;
  std::optional<double> v0;
  bool no_abstention = false;
  std::uint64_t seed = 0;
  std::string mode = "paper_step";
  std::size_t max_iter = 10'000;
  std::optional<std::uint64_t> budget;
  std::optional<int> workers;
  std::string out_dir;
};

struct Loaded {
  GameConfig config;
  GameInstance game;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, sha256
  std::string digest;
};

Loaded load(const Common& c) {
  GameConfig cfg = load_game_config(c.config);
  if (!c.beta.empty()) cfg.build.rationality = parse_beta(c.beta);
  if (c.no_abstention) cfg.build.abstention = AbstentionPolicy::disabled();
  if (c.v0) cfg.build.abstention = AbstentionPolicy::value(*c.v0);

  std::vector<std::pair<std::string, std::string>> inputs;
  std::string all;
  for (const fs::path& p :
       {fs::path(c.config), cfg.evaluations, cfg.pricing}) {
    const std::string bytes = read_file(p);
    inputs.emplace_back(p.string(), sha256_hex(bytes));
    all += inputs.back().second;
  }
  auto records = select_records(load_evaluation_csv(cfg.evaluations),
                                cfg.dataset, cfg.method);
  if (records.empty()) {
    throw InvalidArgument("no records for dataset '" + cfg.dataset +
                          "' and method '" + cfg.method + "' in " +
                          cfg.evaluations.string());
  }
  GameInstance game = build_game(records, load_pricing_json(cfg.pricing),
                                 cfg.build);
  return Loaded{std::move(cfg), std::move(game), std::move(inputs),
                sha256_hex(all)};
}

ScanOptions scan_options(const Common& c) {
  ScanOptions s;
  s.budget = c.budget ? *c.budget : env_u64("TTC_BUDGET", kDefaultScanBudget);
  s.workers = c.workers ? *c.workers
                        : static_cast<int>(env_u64("TTC_WORKERS", 0));
  if (s.workers > 0) omp_set_num_threads(s.workers);
  return s;
}

DynamicsConfig dynamics_config(const Common& c) {
  DynamicsConfig d;
  d.mode = c.mode == "best_response" ? DynamicsMode::kStrictBestResponse
                                     : DynamicsMode::kPaperStep;
  d.seed = c.seed;
  d.max_iterations = c.max_iter;
  d.scan = scan_options(c);
  return d;
}

json rationality_json(const Rationality& r) {
  return r.is_perfect() ? json("inf") : json(r.beta());
}

// Writes the named outputs under `dir` plus a manifest, or prints the
// primary output to `out` when no directory is given.
class Emitter {
 public:
  Emitter(std::string command, const Common& common, const Loaded& loaded,
          std::vector<std::string> argv, std::ostream& out)
      : command_(std::move(command)),
        common_(common),
        loaded_(loaded),
        argv_(std::move(argv)),
        out_(out),
        started_(utc_now()) {}

  void add(const std::string& name, std::string content, bool primary) {
    if (primary && common_.out_dir.empty()) out_ << content;
    files_.emplace_back(name, std::move(content));
  }

  void finish() {
    if (common_.out_dir.empty()) return;
    const fs::path dir(common_.out_dir);
    fs::create_directories(dir);
    json outputs = json::array();
    for (const auto& [name, content] : files_) {
      std::ofstream f(dir / name, std::ios::binary);
      if (!f) throw InvalidArgument("cannot write " + (dir / name).string());
      f << content;
      outputs.push_back({{"file", name}, {"sha256", sha256_hex(content)}});
    }
    json inputs = json::array();
    for (const auto& [path, digest] : loaded_.inputs) {
      inputs.push_back({{"path", path}, {"sha256", digest}});
    }
    json manifest = {
        {"tool", "ttcgame"},
        {"version", TTC_VERSION},
        {"command", command_},
        {"arguments", argv_},
        {"seed", common_.seed},
        {"config_digest", loaded_.digest},
        {"inputs", std::move(inputs)},
        {"outputs", std::move(outputs)},
        {"rationality", rationality_json(loaded_.game.rationality())},
        {"started_at", started_},
        {"finished_at", utc_now()}};
    std::ofstream f(dir / "manifest.json", std::ios::binary);
    f << manifest.dump(2) << '\n';
    out_ << "wrote " << files_.size() << " file(s) and manifest.json to "
         << dir.string() << '\n';
  }

 private:
  std::string command_;
  const Common& common_;
  const Loaded& loaded_;
  std::vector<std::string> argv_;
  std::ostream& out_;
  std::string started_;
  std::vector<std::pair<std::string, std::string>> files_;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json poa_json(const GameInstance& game, const StrategyProfile& eq,
              const WelfareOptimum& opt) {
  try {
    return price_of_anarchy(game, eq, opt).poa;
  } catch (const DomainError&) {
    return nullptr;
  }
}

json bound_json(const GameInstance& game, const StrategyProfile& eq) {
  try {
    const auto b = leading_poa_bound(game, eq);
    return {{"leading_bound", b.leading_bound},
            {"delta_sw", b.delta_sw},
            {"w_star", b.w_star},
            {"delta_v", number_json(b.delta_v)}};
  } catch (const DomainError&) {
    return nullptr;
  }
}

int cmd_simulate(const Common& c, const std::vector<std::string>& argv,
                 std::ostream& out) {
  const Loaded loaded = load(c);
  const GameInstance& game = loaded.game;
  const auto trace = run(game, dynamics_config(c));

  json summary = {{"converged", trace.converged},
                  {"iterations", trace.steps.size() - 1},
                  {"rationality", rationality_json(game.rationality())},
                  {"seed", c.seed},
                  {"mode", c.mode},
                  {"max_welfare", trace.optimum.welfare},
                  {"welfare_maximizer", trace.optimum.profile.levels}};
  if (trace.converged) {
    const auto& eq = *trace.equilibrium;
    summary["equilibrium"] = profile_json(game, eq, trace.optimum.welfare);
    summary["poa"] = poa_json(game, eq, trace.optimum);
    summary["inefficiency"] = number_json(trace.steps.back().inefficiency);
    summary["bound"] = bound_json(game, eq);
  } else {
    summary["equilibrium"] = nullptr;
    summary["poa"] = nullptr;
    summary["inefficiency"] = nullptr;
    summary["bound"] = nullptr;
  }

  Emitter emit("simulate", c, loaded, argv, out);
  emit.add("summary.json", dump(summary), true);
  emit.add("trace.json", dump(trace_json(game, trace)), false);
  std::ostringstream csv;
  write_trace_csv(csv, trace, game.num_providers());
  emit.add("trace.csv", csv.str(), false);
  emit.finish();
  return trace.converged ? kExitOk : kExitNotConverged;
}

int cmd_equilibria(const Common& c, const std::vector<std::string>& argv,
                   std::ostream& out) {
  const Loaded loaded = load(c);
  const GameInstance& game = loaded.game;
  const ScanOptions scan = scan_options(c);
  const auto eqs = enumerate_equilibria(game, scan);
  const auto opt = max_social_welfare(game, scan);

  json list = json::array();
  for (const auto& e : eqs) list.push_back(profile_json(game, e, opt.welfare));
  const json doc = {{"rationality", rationality_json(game.rationality())},
                    {"profiles", game.num_profiles()},
                    {"max_welfare", opt.welfare},
                    {"welfare_maximizer", opt.profile.levels},
                    {"equilibria", std::move(list)}};
  Emitter emit("equilibria", c, loaded, argv, out);
  emit.add("equilibria.json", dump(doc), true);
  emit.finish();
  return kExitOk;
}

int sweep_common(const std::string& name, const Common& c,
                 const std::vector<double>& betas,
                 const std::vector<std::string>& argv, std::ostream& out) {
  const Loaded loaded = load(c);
  const auto points = beta_sweep(loaded.game, betas, dynamics_config(c));
  std::ostringstream csv;
  write_sweep_csv(csv, points);
  Emitter emit(name, c, loaded, argv, out);
  emit.add(name + ".csv", csv.str(), true);
  emit.finish();
  const bool all = std::all_of(points.begin(), points.end(),
                               [](const auto& p) { return p.converged; });
  return all ? kExitOk : kExitNotConverged;
}

int cmd_auction(const Common& c, const std::vector<std::string>& argv,
                std::ostream& out) {
  const Loaded loaded = load(c);
  const GameInstance& game = loaded.game;
  if (game.num_providers() < 2) {
    throw InvalidArgument("auction requires ≥ 2 providers");
  }
  const auto auction = auction_equilibrium(game);
  const auto trace = run(game, dynamics_config(c));
  json doc = auction_json(game, auction, trace.equilibrium);
  doc["max_welfare"] = trace.optimum.welfare;
  doc["auction_poa"] = trace.optimum.welfare > 0.0
                           ? number_json(trace.optimum.welfare /
                                         auction.outcome.welfare)
                           : json(nullptr);
  Emitter emit("auction", c, loaded, argv, out);
  emit.add("auction.json", dump(doc), true);
  emit.finish();
  return kExitOk;
}

}  // namespace

GameConfig load_game_config(const fs::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string(), 0, 0, e.what());
  }
  if (!doc.is_object()) {
    throw ParseError(path.string(), 0, 0, "config must be a JSON object");
  }
  const fs::path base = path.parent_path();
  const auto need_string = [&](const char* key) {
    if (!doc.contains(key) || !doc[key].is_string()) {
      throw InvalidArgument(path.string() + ": '" + key +
                            "' must be a string");
    }
    return doc[key].get<std::string>();
  };
  static const std::vector<std::string> known = {
      "evaluations", "pricing", "dataset", "method",    "margin",
      "value_per_accuracy_point", "v0",  "beta",   "validation"};
  for (const auto& [key, _] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw InvalidArgument(path.string() + ": unknown key '" + key + "'");
    }
  }

  GameConfig cfg;
  cfg.evaluations = base / need_string("evaluations");
  cfg.pricing = base / need_string("pricing");
  cfg.dataset = need_string("dataset");
  cfg.method = need_string("method");

  if (doc.contains("margin")) {
    if (!doc["margin"].is_number()) {
      throw InvalidArgument(path.string() + ": 'margin' must be a number");
    }
    cfg.build.margin = doc["margin"].get<double>();
  }
  const json vpp = doc.value("value_per_accuracy_point", json("preset"));
  if (vpp.is_number()) {
    cfg.build.value_per_accuracy_point = vpp.get<double>();
  } else if (vpp == "preset") {
    const auto preset = value_per_point_preset(cfg.dataset);
    if (!preset) {
      throw InvalidArgument(path.string() + ": no value-per-point preset for "
                            "dataset '" + cfg.dataset + "'");
    }
    cfg.build.value_per_accuracy_point = *preset;
  } else {
    throw InvalidArgument(path.string() + ": 'value_per_accuracy_point' must "
                          "be a number or \"preset\"");
  }
  if (doc.contains("v0")) {
    if (doc["v0"].is_null()) {
      cfg.build.abstention = AbstentionPolicy::disabled();
    } else if (doc["v0"].is_number()) {
      cfg.build.abstention = AbstentionPolicy::value(doc["v0"].get<double>());
    } else {
      throw InvalidArgument(path.string() + ": 'v0' must be a number or null");
    }
  }
  if (doc.contains("beta")) {
    const json& b = doc["beta"];
    if (b.is_string()) {
      cfg.build.rationality = parse_beta(b.get<std::string>());
    } else if (b.is_number()) {
      cfg.build.rationality = parse_beta(b.dump());
    } else {
      throw InvalidArgument(path.string() + ": 'beta' must be a number or "
                            "\"inf\"");
    }
  }
  if (doc.contains("validation")) {
    const std::string v = lower(need_string("validation"));
    if (v == "strict") {
      cfg.build.validation = ValidationMode::kStrict;
    } else if (v == "lenient") {
      cfg.build.validation = ValidationMode::kLenient;
    } else {
      throw InvalidArgument(path.string() + ": 'validation' must be strict "
                            "or lenient");
    }
  }
  return cfg;
}

Rationality parse_beta(const std::string& text) {
  return rationality_of(parse_beta_value(text));
}

std::vector<double> parse_beta_list(const std::string& text) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_beta_value(item));
  if (text.back() == ',') throw InvalidArgument("trailing comma in beta list");
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream s;
  s << std::hex << std::setfill('0');
  for (unsigned int k = 0; k < len; ++k) s << std::setw(2) << int{md[k]};
  return s.str();
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Test-time-compute market games: dynamics, equilibria, price "
               "of anarchy and auctions",
               "ttcgame"};
  app.require_subcommand(1);
  app.set_version_flag("--version", TTC_VERSION);

  Common c;
  std::string betas;
  const auto add_common = [&](CLI::App* sub, bool dynamics) {
    sub->add_option("config", c.config, "Game config JSON")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--beta", c.beta,
                    "User rationality: positive number or inf");
    auto* v0 = sub->add_option("--v0", c.v0, "Abstention value");
    sub->add_flag("--no-abstention", c.no_abstention,
                  "Disable the outside option")
        ->excludes(v0);
    sub->add_option("--budget", c.budget,
                    "Maximum number of profiles to scan (env TTC_BUDGET)");
    sub->add_option("--workers", c.workers,
                    "Worker threads, 0 for the default (env TTC_WORKERS)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--out", c.out_dir,
                    "Directory for output files and the run manifest");
    if (dynamics) {
      sub->add_option("--seed", c.seed, "Seed for provider selection");
      sub->add_option("--mode", c.mode, "Update rule")
          ->check(CLI::IsMember({"paper_step", "best_response"}));
      sub->add_option("--max-iter", c.max_iter, "Maximum number of moves")
          ->check(CLI::PositiveNumber);
    }
  };

  auto* simulate = app.add_subcommand("simulate", "Run better-response "
                                      "dynamics and write the trace");
  add_common(simulate, true);
  auto* equilibria = app.add_subcommand("equilibria", "Enumerate all pure "
                                        "Nash equilibria");
  add_common(equilibria, false);
  auto* poa = app.add_subcommand("poa", "Dynamics followed by the exact "
                                 "price of anarchy");
  add_common(poa, true);
  auto* sweep = app.add_subcommand("sweep", "Inefficiency across a list of "
                                   "betas");
  add_common(sweep, true);
  sweep->add_option("--betas", betas, "Comma-separated betas, inf allowed")
      ->required();
  auto* auction = app.add_subcommand("auction", "Dominant-strategy auction "
                                     "compared with the game equilibrium");
  add_common(auction, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  const std::vector<std::string> args(argv + 1, argv + argc);
  try {
    if (simulate->parsed()) return cmd_simulate(c, args, out);
    if (equilibria->parsed()) return cmd_equilibria(c, args, out);
    if (poa->parsed()) {
      const GameConfig cfg = load_game_config(c.config);
      const Rationality r = c.beta.empty() ? cfg.build.rationality
                                           : parse_beta(c.beta);
      const double beta = r.is_perfect()
                              ? std::numeric_limits<double>::infinity()
                              : r.beta();
      return sweep_common("poa", c, {beta}, args, out);
    }
    if (sweep->parsed()) {
      return sweep_common("sweep", c, parse_beta_list(betas), args, out);
    }
    if (auction->parsed()) return cmd_auction(c, args, out);
  } catch (const BudgetExceeded& e) {
    err << "ttcgame: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "ttcgame: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace ttc::cli
