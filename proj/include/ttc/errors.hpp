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
#include <stdexcept>
#include <string>

namespace ttc {

// Bad input: unknown level, out-of-range index, malformed value.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input is well-formed but the quantity is mathematically undefined
// (value ties, non-positive profit under a logarithm, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Exhaustive scan would exceed the configured candidate budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget)
      : std::runtime_error("strategy space has " + std::to_string(required) +
                           " profiles, budget is " + std::to_string(budget) +
                           "; raise the budget to at least " +
                           std::to_string(required)),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

// Malformed input file. Row and column are 1-based; 0 means "not applicable".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t row, std::size_t column,
             const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(row) +
                           (column ? ":" + std::to_string(column) : "") +
                           ": " + what),
        row_(row),
        column_(column) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

}  // namespace ttc
