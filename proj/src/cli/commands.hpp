// Copyright 2026 The mvcircuits Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MVC_CLI_COMMANDS_HPP
#define MVC_CLI_COMMANDS_HPP

#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cli/config.hpp"

namespace mvc::cli {

/// Empty cells mark values a method could not produce.
using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
  std::string command;
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> notes;
  double max_delta = 0.0;
};

/// Largest dense transfer matrix whose spectrum `spectrum` computes.
inline constexpr Index kSpectrumDim = 256;

Table cmd_classify(const RunConfig& cfg);
Table cmd_corr(const RunConfig& cfg);
Table cmd_otoc(const RunConfig& cfg);
Table cmd_longtime(const RunConfig& cfg);
Table cmd_spectrum(const RunConfig& cfg);
Table cmd_oracle_check(const RunConfig& cfg);

/// Dispatches on the subcommand name.
Table run_command(const std::string& name, const RunConfig& cfg);

std::string format_csv(const Table& table);
nlohmann::json format_json(const Table& table, const RunConfig& cfg);

/// Writes the table to cfg.out (or `console`) in the configured format, plus
/// a JSON sidecar next to CSV files. Returns the process exit code.
int emit(const Table& table, const RunConfig& cfg, std::ostream& console, std::ostream& diagnostics);

/// Max pairwise |a - b| over the available values; unset with fewer than two.
std::optional<double> max_pairwise_delta(const std::vector<std::optional<double>>& values);

}  // namespace mvc::cli

#endif  // MVC_CLI_COMMANDS_HPP
