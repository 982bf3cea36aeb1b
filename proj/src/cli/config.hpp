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

#ifndef MVC_CLI_CONFIG_HPP
#define MVC_CLI_CONFIG_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mvc/eigenbases.hpp"
#include "mvc/gate_families.hpp"

namespace mvc::cli {

/// One-site qubit operator as coefficients on (1, X, Y, Z).
struct OperatorSpec {
  std::array<double, 4> coeffs{0.0, 1.0, 0.0, 0.0};

  static OperatorSpec parse(const std::string& text);
  OperatorSpec normalized() const;
  Mat matrix() const;
  bool traceless() const { return coeffs[0] == 0.0; }
  PauliCoeffs pauli() const { return {coeffs[1], coeffs[2], coeffs[3]}; }
};

enum class MethodSelection { transfer, oracle, closed_form, all };

struct RunConfig {
  std::string gate = "kim";
  std::vector<double> params{0.4, 0.6};
  std::optional<std::uint64_t> seed;
  OperatorSpec alpha;
  OperatorSpec beta;
  bool all_pauli_pairs = false;
  int tmax = 8;
  int nmax = 3;
  MethodSelection method = MethodSelection::all;
  int chain_length = 8;
  int threads = 1;
  double delta_tol = 1e-10;
  bool strict = false;
  std::string out;
  std::string format = "csv";
  std::string preset;

  /// Overrides fields with the keys present in `j`.
  void merge(const nlohmann::json& j);
  nlohmann::json to_json() const;
  void validate() const;
};

std::string to_string(MethodSelection m);

/// Parses a config file: JSON, or one `key = value` pair per line.
nlohmann::json read_config_file(const std::filesystem::path& path);

/// Directory searched for named presets.
std::filesystem::path preset_dir();

/// Loads a preset by name (from preset_dir()) or by path.
nlohmann::json load_preset(const std::string& name_or_path);

/// The gate described by the config.
Gate make_gate(const RunConfig& cfg);

/// Eigenoperator family of the configured gate, if it has one.
std::optional<EigenFamily> eigen_family(const RunConfig& cfg);

}  // namespace mvc::cli

#endif  // MVC_CLI_CONFIG_HPP
