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

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ttc/game.hpp"

namespace ttc {

// One row of an evaluation table: a model's average accuracy and output
// length on one dataset at one compute level.
struct EvaluationRecord {
  std::string model;
  std::string dataset;
  std::string method;  // majority_voting, best_of_n or chain_of_thought
  std::int64_t level_ordinal = 0;
  std::string level_label;
  double accuracy_pct = 0.0;
  double avg_output_tokens = 0.0;
  std::size_t row = 0;  // 1-based line in the source file; 0 if synthetic
};

// Model name to USD per million output tokens.
using PricingTable = std::map<std::string, Usd>;

// USD per accuracy point for the named dataset (gsm8k, gpqa, aime; case
// insensitive), or nullopt for other names.
std::optional<Usd> value_per_point_preset(std::string_view dataset);

struct BuildConfig {
  double margin = 0.25;  // price = (1 + margin) * cost
  Usd value_per_accuracy_point = 0.02;
  AbstentionPolicy abstention = AbstentionPolicy::value(0.0);
  Rationality rationality = Rationality::perfect();
  ValidationMode validation = ValidationMode::kStrict;
};

inline constexpr std::string_view kEvaluationHeader =
    "model,dataset,method,level_ordinal,level_label,accuracy_pct,"
    "avg_output_tokens";

// Parses an evaluation CSV. An empty input yields no records. `source`
// names the input in error messages. Throws ParseError naming the row and
// column of the first malformed or out-of-range cell.
std::vector<EvaluationRecord> parse_evaluation_csv(std::istream& in,
                                                   const std::string& source);
std::vector<EvaluationRecord> load_evaluation_csv(
    const std::filesystem::path& path);

// Parses a flat JSON object of positive prices. Throws ParseError.
PricingTable parse_pricing_json(std::string_view text,
                                const std::string& source);
PricingTable load_pricing_json(const std::filesystem::path& path);

// Records matching both names, in input order.
std::vector<EvaluationRecord> select_records(
    std::span<const EvaluationRecord> records, std::string_view dataset,
    std::string_view method);

// One provider per model, in order of first appearance. Per level:
//   price   = tokens * usd_per_million / 1e6
//   cost    = price / (1 + margin)
//   quality = value_per_accuracy_point * accuracy
//
// Throws InvalidArgument when there are no records, the records mix
// datasets or methods, a model has no price, ordinals repeat or do not
// cover 0..k-1, or the built profiles fail validation.
GameInstance build_game(std::span<const EvaluationRecord> records,
                        const PricingTable& pricing,
                        const BuildConfig& config);

}  // namespace ttc
