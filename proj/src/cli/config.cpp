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

#include "cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef MVC_PRESET_DIR
#define MVC_PRESET_DIR "presets"
#endif

namespace mvc::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error("not a number: '" + item + "'");
    }
    if (used != item.size()) throw Error("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<double> numbers_from(const nlohmann::json& j) {
  if (j.is_array()) return j.get<std::vector<double>>();
  if (j.is_number()) return {j.get<double>()};
  return parse_numbers(j.get<std::string>());
}

OperatorSpec operator_from(const nlohmann::json& j) {
  if (j.is_string()) return OperatorSpec::parse(j.get<std::string>());
  const auto v = numbers_from(j);
  std::ostringstream ss;
  ss.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) ss << (i ? "," : "") << v[i];
  return OperatorSpec::parse(ss.str());
}

int int_from(const nlohmann::json& j) {
  if (j.is_number_integer()) return j.get<int>();
  return std::stoi(j.get<std::string>());
}

bool bool_from(const nlohmann::json& j) {
  if (j.is_boolean()) return j.get<bool>();
  const std::string s = lower(trim(j.get<std::string>()));
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw Error("not a boolean: '" + s + "'");
}

MethodSelection method_from(const std::string& s) {
  if (s == "transfer") return MethodSelection::transfer;
  if (s == "oracle") return MethodSelection::oracle;
  if (s == "closed_form") return MethodSelection::closed_form;
  if (s == "all") return MethodSelection::all;
  throw Error("unknown method '" + s + "' (transfer | oracle | closed_form | all)");
}

}  // namespace

OperatorSpec OperatorSpec::parse(const std::string& text) {
  const std::string s = lower(trim(text));
  OperatorSpec op;
  if (s == "i" || s == "identity" || s == "1") {
    op.coeffs = {1.0, 0.0, 0.0, 0.0};
  } else if (s == "x") {
    op.coeffs = {0.0, 1.0, 0.0, 0.0};
  } else if (s == "y") {
    op.coeffs = {0.0, 0.0, 1.0, 0.0};
  } else if (s == "z") {
    op.coeffs = {0.0, 0.0, 0.0, 1.0};
  } else {
    const auto v = parse_numbers(s);
    if (v.size() == 3) {
      op.coeffs = {0.0, v[0], v[1], v[2]};
    } else if (v.size() == 4) {
      op.coeffs = {v[0], v[1], v[2], v[3]};
    } else {
      throw Error("operator must be x|y|z|identity, 'ax,ay,az' or 'c0,ax,ay,az'");
    }
  }
  return op;
}

OperatorSpec OperatorSpec::normalized() const {
  double norm = 0.0;
  for (double c : coeffs) norm += c * c;
  norm = std::sqrt(norm);
  if (norm == 0.0) throw Error("operator coefficients are all zero");
  OperatorSpec out;
  for (int i = 0; i < 4; ++i) out.coeffs[i] = coeffs[i] / norm;
  return out;
}

Mat OperatorSpec::matrix() const {
  return coeffs[0] * pauli::identity() + coeffs[1] * pauli::x() + coeffs[2] * pauli::y() +
         coeffs[3] * pauli::z();
}

std::string to_string(MethodSelection m) {
  switch (m) {
    case MethodSelection::transfer:
      return "transfer";
    case MethodSelection::oracle:
      return "oracle";
    case MethodSelection::closed_form:
      return "closed_form";
    case MethodSelection::all:
      return "all";
  }
  return "all";
}

void RunConfig::merge(const nlohmann::json& j) {
  for (const auto& [key, value] : j.items()) {
    if (key == "gate") gate = lower(value.get<std::string>());
    else if (key == "params") params = numbers_from(value);
    else if (key == "seed") seed = static_cast<std::uint64_t>(value.is_number() ? value.get<std::uint64_t>()
                                                                           : std::stoull(value.get<std::string>()));
    else if (key == "alpha") alpha = operator_from(value);
    else if (key == "beta") beta = operator_from(value);
    else if (key == "all_pauli_pairs") all_pauli_pairs = bool_from(value);
    else if (key == "tmax") tmax = int_from(value);
    else if (key == "nmax") nmax = int_from(value);
    else if (key == "method") method = method_from(value.get<std::string>());
    else if (key == "chain_length") chain_length = int_from(value);
    else if (key == "threads") threads = int_from(value);
    else if (key == "delta_tol") delta_tol = value.is_number() ? value.get<double>() : std::stod(value.get<std::string>());
    else if (key == "strict") strict = bool_from(value);
    else if (key == "out") out = value.get<std::string>();
    else if (key == "format") format = lower(value.get<std::string>());
    else if (key == "preset") preset = value.get<std::string>();
    else if (key == "description") continue;
    else throw Error("unknown config key '" + key + "'");
  }
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["gate"] = gate;
  j["params"] = params;
  if (seed) j["seed"] = *seed;
  const OperatorSpec a = alpha.normalized(), b = beta.normalized();
  j["alpha"] = a.coeffs;
  j["beta"] = b.coeffs;
  j["all_pauli_pairs"] = all_pauli_pairs;
  j["tmax"] = tmax;
  j["nmax"] = nmax;
  j["method"] = to_string(method);
  j["chain_length"] = chain_length;
  j["threads"] = threads;
  j["delta_tol"] = delta_tol;
  j["strict"] = strict;
  j["format"] = format;
  if (!preset.empty()) j["preset"] = preset;
  return j;
}

void RunConfig::validate() const {
  if (tmax < 0) throw Error("tmax must be non-negative");
  if (nmax < 1) throw Error("nmax must be at least 1");
  if (threads < 1) throw Error("threads must be at least 1");
  if (format != "csv" && format != "json") throw Error("format must be csv or json");
  (void)alpha.normalized();
  (void)beta.normalized();
  (void)make_gate(*this);
}

nlohmann::json read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const std::string head = trim(text);
  if (!head.empty() && head.front() == '{') return nlohmann::json::parse(text);
  nlohmann::json j = nlohmann::json::object();
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error("config line without '=': " + line);
    j[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return j;
}

std::filesystem::path preset_dir() {
  if (const char* env = std::getenv("MVC_PRESET_DIR")) return env;
  return MVC_PRESET_DIR;
}

nlohmann::json load_preset(const std::string& name_or_path) {
  std::filesystem::path p(name_or_path);
  if (!std::filesystem::exists(p)) p = preset_dir() / (name_or_path + ".json");
  if (!std::filesystem::exists(p)) throw Error("unknown preset '" + name_or_path + "'");
  nlohmann::json j = read_config_file(p);
  j["preset"] = name_or_path;
  return j;
}

Gate make_gate(const RunConfig& cfg) {
  auto need = [&](std::size_t n) {
    if (cfg.params.size() != n)
      throw Error("gate '" + cfg.gate + "' takes " + std::to_string(n) + " parameter(s)");
  };
  auto need_seed = [&]() -> std::uint64_t {
    if (!cfg.seed) throw Error("gate '" + cfg.gate + "' is random and needs --seed");
    return *cfg.seed;
  };
  if (cfg.gate == "kim") {
    need(2);
    return build_kim({cfg.params[0], cfg.params[1]});
  }
  if (cfg.gate == "xy") {
    need(1);
    return build_xy({cfg.params[0]});
  }
  if (cfg.gate == "kak") {
    need(16);
    const auto& v = cfg.params;
    KakParams p{v[0], v[1], v[2], v[3], {v[4], v[5], v[6]}, {v[7], v[8], v[9]}, {v[10], v[11], v[12]},
                {v[13], v[14], v[15]}};
    return build_kak(p);
  }
  if (cfg.gate == "random-du") return random_dual_unitary(need_seed());
  if (cfg.gate == "random-kak") return random_kak(need_seed());
  if (cfg.gate == "swap") return swap_gate();
  if (cfg.gate == "identity") return identity_gate();
  throw Error("unknown gate '" + cfg.gate + "' (kim | xy | kak | random-du | random-kak | swap | identity)");
}

std::optional<EigenFamily> eigen_family(const RunConfig& cfg) {
  if (cfg.gate == "kim") {
    return cfg.params.size() == 2 && cfg.params[0] == 0.0 && cfg.params[1] == 0.0 ? EigenFamily::integrable_kim
                                                                                  : EigenFamily::kicked_ising;
  }
  if (cfg.gate == "xy") return EigenFamily::kicked_xy;
  if (cfg.gate == "random-du") return EigenFamily::dual_unitary;
  if (cfg.gate == "random-kak") return EigenFamily::generic;
  if (cfg.gate == "kak") return is_dual_unitary(make_gate(cfg)) ? EigenFamily::dual_unitary : EigenFamily::generic;
  return std::nullopt;
}

}  // namespace mvc::cli
