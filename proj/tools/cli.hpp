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

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ttc/game.hpp"
#include "ttc/ingest.hpp"

namespace ttc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitBudget = 3;

// One experiment: data files plus build settings. Relative paths resolve
// against the directory of the config file.
struct GameConfig {
  std::filesystem::path evaluations;
  std::filesystem::path pricing;
  std::string dataset;
  std::string method;
  BuildConfig build;
};

// Throws InvalidArgument or ParseError.
GameConfig load_game_config(const std::filesystem::path& path);

// "inf" (any case) or a positive number. Throws InvalidArgument.
Rationality parse_beta(const std::string& text);

// Comma-separated positive betas, "inf" allowed; empty text gives an empty
// list. Throws InvalidArgument.
std::vector<double> parse_beta_list(const std::string& text);

// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(const std::string& bytes);

// Entry point of the ttcgame tool. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace ttc::cli
