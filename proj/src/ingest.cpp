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

#include "ttc/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ttc/errors.hpp"

namespace ttc {

namespace {

constexpr std::size_t kColumns = 7;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

// Splits one CSV line. Double-quoted fields may contain commas; "" inside
// quotes is a literal quote.
std::vector<std::string> split_csv(std::string_view line,
                                   const std::string& source,
                                   std::size_t row) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char ch = line[k];
    if (quoted) {
      if (ch != '"') {
        out.back() += ch;
      } else if (k + 1 < line.size() && line[k + 1] == '"') {
        out.back() += '"';
        ++k;
      } else {
        quoted = false;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.emplace_back();
    } else {
      out.back() += ch;
    }
  }
  if (quoted) throw ParseError(source, row, out.size(), "unterminated quote");
  return out;
}

template <typename T>
T parse_number(const std::string& cell, const std::string& source,
               std::size_t row, std::size_t column, const char* name) {
  T value{};
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto [end, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || end != last || cell.empty()) {
    throw ParseError(source, row, column,
                     std::string("cannot parse ") + name + " '" + cell + "'");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) {
      throw ParseError(source, row, column,
                       std::string(name) + " must be finite");
    }
  }
  return value;
}

bool known_method(std::string_view m) {
  return m == "majority_voting" || m == "best_of_n" || m == "chain_of_thought";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::optional<Usd> value_per_point_preset(std::string_view dataset) {
  const std::string name = lower(dataset);
  if (name == "gsm8k") return 0.008;
  if (name == "gpqa") return 0.02;
  if (name == "aime") return 0.05;
  return std::nullopt;
}

std::vector<EvaluationRecord> parse_evaluation_csv(std::istream& in,
                                                   const std::string& source) {
  std::vector<EvaluationRecord> out;
  std::string line;
  std::size_t row = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (row == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!header_seen) {
      if (line != kEvaluationHeader) {
        throw ParseError(source, row, 0,
                         "expected header '" + std::string(kEvaluationHeader) +
                             "'");
      }
      header_seen = true;
      continue;
    }
    const auto cells = split_csv(line, source, row);
    if (cells.size() != kColumns) {
      throw ParseError(source, row, std::min(cells.size(), kColumns) + 1,
                       "expected " + std::to_string(kColumns) +
                           " columns, found " + std::to_string(cells.size()));
    }
    EvaluationRecord r;
    r.row = row;
    r.model = cells[0];
    r.dataset = cells[1];
    r.method = cells[2];
    if (r.model.empty()) throw ParseError(source, row, 1, "empty model name");
    if (!known_method(r.method)) {
      throw ParseError(source, row, 3, "unknown method '" + r.method + "'");
    }
    r.level_ordinal =
        parse_number<std::int64_t>(cells[3], source, row, 4, "level_ordinal");
    if (r.level_ordinal < 0) {
      throw ParseError(source, row, 4, "level_ordinal must be non-negative");
    }
    r.level_label = cells[4];
    r.accuracy_pct =
        parse_number<double>(cells[5], source, row, 6, "accuracy_pct");
    if (r.accuracy_pct < 0.0 || r.accuracy_pct > 100.0) {
      throw ParseError(source, row, 6,
                       "accuracy_pct " + cells[5] + " outside [0, 100]");
    }
    r.avg_output_tokens =
        parse_number<double>(cells[6], source, row, 7, "avg_output_tokens");
    if (!(r.avg_output_tokens > 0.0)) {
      throw ParseError(source, row, 7, "avg_output_tokens must be positive");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<EvaluationRecord> load_evaluation_csv(
    const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  return parse_evaluation_csv(in, path.string());
}

PricingTable parse_pricing_json(std::string_view text,
                                const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source, 0, 0, e.what());
  }
  if (!doc.is_object()) {
    throw ParseError(source, 0, 0, "pricing must be a JSON object");
  }
  PricingTable out;
  for (const auto& [model, price] : doc.items()) {
    if (!price.is_number()) {
      throw ParseError(source, 0, 0, "price of '" + model + "' is not a number");
    }
    const Usd p = price.get<Usd>();
    if (!std::isfinite(p) || !(p > 0.0)) {
      throw ParseError(source, 0, 0, "price of '" + model + "' must be positive");
    }
    out.emplace(model, p);
  }
  return out;
}

PricingTable load_pricing_json(const std::filesystem::path& path) {
  return parse_pricing_json(read_file(path), path.string());
}

std::vector<EvaluationRecord> select_records(
    std::span<const EvaluationRecord> records, std::string_view dataset,
    std::string_view method) {
  std::vector<EvaluationRecord> out;
  for (const auto& r : records) {
    if (r.dataset == dataset && r.method == method) out.push_back(r);
  }
  return out;
}

GameInstance build_game(std::span<const EvaluationRecord> records,
                        const PricingTable& pricing,
                        const BuildConfig& config) {
  if (records.empty()) throw InvalidArgument("no evaluation records");
  if (!std::isfinite(config.margin) || !(config.margin > 0.0)) {
    throw InvalidArgument("margin must be positive");
  }
  if (!std::isfinite(config.value_per_accuracy_point) ||
      config.value_per_accuracy_point < 0.0) {
    throw InvalidArgument("value per accuracy point must be non-negative");
  }

  std::vector<std::string> models;
  std::map<std::string, std::vector<const EvaluationRecord*>> by_model;
  for (const auto& r : records) {
    if (r.dataset != records[0].dataset || r.method != records[0].method) {
      throw InvalidArgument("records mix (" + records[0].dataset + ", " +
                            records[0].method + ") with (" + r.dataset + ", " +
                            r.method + ")");
    }
    auto [it, inserted] = by_model.try_emplace(r.model);
    if (inserted) models.push_back(r.model);
    it->second.push_back(&r);
  }

  std::vector<ProviderProfile> providers;
  for (const auto& model : models) {
    const auto price = pricing.find(model);
    if (price == pricing.end()) {
      throw InvalidArgument("no pricing entry for model '" + model + "'");
    }
    auto rows = by_model[model];
    std::sort(rows.begin(), rows.end(), [](const auto* a, const auto* b) {
      return a->level_ordinal < b->level_ordinal;
    });
    std::vector<std::string> labels;
    std::vector<Usd> q, p, c;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto& r = *rows[k];
      if (r.level_ordinal != static_cast<std::int64_t>(k)) {
        const bool dup = k > 0 && rows[k - 1]->level_ordinal == r.level_ordinal;
        throw InvalidArgument(
            "model '" + model + "': " +
            (dup ? "duplicate level_ordinal " + std::to_string(r.level_ordinal)
                 : "level ordinals skip " + std::to_string(k)));
      }
      const Usd level_price = r.avg_output_tokens * price->second / 1e6;
      labels.push_back(r.level_label);
      q.push_back(config.value_per_accuracy_point * r.accuracy_pct);
      p.push_back(level_price);
      c.push_back(level_price / (1.0 + config.margin));
    }
    providers.emplace_back(model, std::move(labels), std::move(q),
                           std::move(p), std::move(c));
  }
  return GameInstance(std::move(providers), config.abstention,
                      config.rationality, config.validation);
}

}  // namespace ttc
