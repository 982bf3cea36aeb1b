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

// mvc: scans correlators and OTOCs of brickwork circuits.
//
//   mvc classify --gate kim --params 0.4,0.6
//   mvc otoc --preset fig4 --out fig4.csv
//   mvc longtime --gate random-du --seed 7 --nmax 3 --strict

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"

namespace {

struct Flags {
  std::map<std::string, std::string> values;
  bool strict = false;
  bool all_pauli_pairs = false;
  std::string preset;
  std::string config;
};

void add_common(CLI::App* sub, Flags& f) {
  auto opt = [&](const std::string& name, const std::string& key, const std::string& help) {
    sub->add_option(name, f.values[key], help);
  };
  opt("--gate", "gate", "kim | xy | kak | random-du | random-kak | swap | identity");
  opt("--params", "params", "comma-separated gate parameters");
  opt("--alpha", "alpha", "probe operator: x|y|z|identity, 'ax,ay,az' or 'c0,ax,ay,az'");
  opt("--beta", "beta", "reference operator, same syntax as --alpha");
  opt("--tmax", "tmax", "largest time in scans");
  opt("--nmax", "nmax", "largest column depth in long-time and spectrum runs");
  opt("--method", "method", "transfer | oracle | closed_form | all");
  opt("--seed", "seed", "seed for random gate families");
  opt("--out", "out", "output path (stdout if omitted)");
  opt("--format", "format", "csv | json");
  opt("--threads", "threads", "worker threads for scan rows");
  opt("--chain-length", "chain_length", "oracle chain length L");
  opt("--delta-tol", "delta_tol", "tolerance on cross-method deltas for --strict");
  sub->add_option("--preset", f.preset, "named preset or preset file");
  sub->add_option("--config", f.config, "config file (JSON or key=value lines)");
  sub->add_flag("--strict", f.strict, "exit nonzero when a cross-method delta exceeds --delta-tol");
  sub->add_flag("--all-pauli-pairs", f.all_pauli_pairs, "corr: scan all nine Pauli pairs");
}

mvc::cli::RunConfig resolve(const Flags& f) {
  using nlohmann::json;
  mvc::cli::RunConfig cfg;
  json file = f.config.empty() ? json::object() : mvc::cli::read_config_file(f.config);
  std::string preset = f.preset;
  if (preset.empty() && file.contains("preset")) preset = file["preset"].get<std::string>();
  if (!preset.empty()) cfg.merge(mvc::cli::load_preset(preset));
  file.erase("preset");
  cfg.merge(file);
  json flags = json::object();
  for (const auto& [key, value] : f.values)
    if (!value.empty()) flags[key] = value;
  if (f.strict) flags["strict"] = true;
  if (f.all_pauli_pairs) flags["all_pauli_pairs"] = true;
  cfg.merge(flags);
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlators and OTOCs of brickwork quantum circuits"};
  app.require_subcommand(1);
  const std::map<std::string, std::string> commands{
      {"classify", "dual-unitarity, channel spectra and ergodicity class of a gate"},
      {"corr", "two-point correlators over the (x, t) grid"},
      {"otoc", "OTOCs over 0 <= x <= t <= tmax"},
      {"longtime", "long-time OTOC values for column depths 1..nmax"},
      {"spectrum", "channel and transfer matrix eigenvalues"},
      {"oracle-check", "transfer results against brute-force simulation"}};
  std::map<std::string, Flags> flags;
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), flags[name]);
  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    const mvc::cli::RunConfig cfg = resolve(flags.at(name));
    const mvc::cli::Table table = mvc::cli::run_command(name, cfg);
    return mvc::cli::emit(table, cfg, std::cout, std::cerr);
  } catch (const mvc::BudgetError& e) {
    std::cerr << "budget error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
