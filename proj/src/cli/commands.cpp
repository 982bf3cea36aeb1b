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

#include "cli/commands.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>
#include <type_traits>

#include "mvc/channels.hpp"
#include "mvc/closed_forms.hpp"
#include "mvc/oracle.hpp"
#include "mvc/transfer.hpp"

namespace mvc::cli {

namespace {

using Row = std::vector<Cell>;

struct RowBlock {
  std::vector<Row> rows;
  double max_delta = 0.0;
};

/// Runs f(0..count-1) on up to `threads` workers; results keep task order.
template <class F>
auto parallel_map(int count, int threads, F&& f) {
  using R = std::invoke_result_t<F&, int>;
  std::vector<std::optional<R>> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int k = 1; k < std::min(threads, count); ++k) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> res;
  res.reserve(count);
  for (auto& o : out) res.push_back(std::move(*o));
  return res;
}

Table collect(std::string command, std::vector<std::string> header, std::vector<RowBlock> blocks) {
  Table t{std::move(command), std::move(header), {}, {}, 0.0};
  for (auto& b : blocks) {
    t.max_delta = std::max(t.max_delta, b.max_delta);
    for (auto& r : b.rows) t.rows.push_back(std::move(r));
  }
  return t;
}

bool wants(const RunConfig& cfg, MethodSelection m) {
  return cfg.method == MethodSelection::all || cfg.method == m;
}

Cell cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

Cell cell(bool b) { return std::string(b ? "true" : "false"); }

std::optional<PauliCoeffs> traceless_coeffs(const OperatorSpec& op) {
  const OperatorSpec n = op.normalized();
  if (!n.traceless()) return std::nullopt;
  return n.pauli();
}

std::string label(const OperatorSpec& op) {
  const auto& c = op.coeffs;
  if (c[0] == 0.0 && c[2] == 0.0 && c[3] == 0.0 && c[1] != 0.0) return "x";
  if (c[0] == 0.0 && c[1] == 0.0 && c[3] == 0.0 && c[2] != 0.0) return "y";
  if (c[0] == 0.0 && c[1] == 0.0 && c[2] == 0.0 && c[3] != 0.0) return "z";
  if (c[1] == 0.0 && c[2] == 0.0 && c[3] == 0.0) return "identity";
  std::ostringstream ss;
  ss.precision(6);
  ss << c[0] << ' ' << c[1] << ' ' << c[2] << ' ' << c[3];
  return ss.str();
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Complex coefficient vector propagated by a real operator, one part at a time.
class SplitState {
 public:
  explicit SplitState(const Vec& v) : re_(v.real()), im_(v.imag()) {
    has_imag_ = im_.cwiseAbs().maxCoeff() > 1e-13 * std::max(1.0, re_.cwiseAbs().maxCoeff());
    if (!has_imag_) im_.setZero();
  }

  void step(const RealTransferOperator& op) {
    re_ = op.apply(re_);
    if (has_imag_) im_ = op.apply(im_);
  }

  cplx overlap(const Vec& left) const {
    const RVec lr = left.real(), li = left.imag();
    cplx s(lr.dot(re_), li.dot(re_));
    if (has_imag_) s += cplx(-li.dot(im_), lr.dot(im_));
    return s;
  }

 private:
  RVec re_, im_;
  bool has_imag_ = false;
};

/// Asymptotic value of the OTOC at fixed (t - x) from the family's closed form.
std::optional<double> otoc_asymptote(const RunConfig& cfg, const Gate& g, const OperatorSpec& alpha,
                                     const OperatorSpec& beta, int t_minus_x) {
  const auto family = eigen_family(cfg);
  const auto a = traceless_coeffs(alpha), b = traceless_coeffs(beta);
  if (!family || !a || !b) return std::nullopt;
  switch (*family) {
    case EigenFamily::kicked_ising:
      return kim_longtime(cfg.params[0], cfg.params[1], *a, *b, t_minus_x);
    case EigenFamily::integrable_kim:
      return kim_integrable_otoc_corrected(*a, *b, 1000, 1000 + t_minus_x);
    case EigenFamily::kicked_xy:
      return xy_longtime(*a, *b, t_minus_x);
    case EigenFamily::dual_unitary: {
      const Mat sb = beta.normalized().matrix();
      return mc_longtime(g.dim().get(), t_minus_x, [&](int n) { return m_n(g, sb, n); });
    }
    case EigenFamily::generic:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<double> corr_closed_form(const RunConfig& cfg, const OperatorSpec& alpha, const OperatorSpec& beta,
                                       int t) {
  const auto a = traceless_coeffs(alpha), b = traceless_coeffs(beta);
  if (!a || !b) return std::nullopt;
  if (cfg.gate == "kim") return kim_correlator(cfg.params[0], cfg.params[1], *a, *b, t);
  if (cfg.gate == "xy") return xy_correlator(cfg.params[0], *a, *b, t);
  return std::nullopt;
}

/// Dimension of the unit-eigenvalue eigenspace of a dense matrix.
int unit_eigenspace_dim(const Mat& m) {
  const Mat shifted = m - Mat::Identity(m.rows(), m.cols());
  const Eigen::JacobiSVD<Mat> svd(shifted);
  int count = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) < kEigTol) ++count;
  return count;
}

}  // namespace

std::optional<double> max_pairwise_delta(const std::vector<std::optional<double>>& values) {
  std::optional<double> d;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      if (values[i] && values[j]) d = std::max(d.value_or(0.0), std::abs(*values[i] - *values[j]));
  return d;
}

Table cmd_classify(const RunConfig& cfg) {
  const Gate g = make_gate(cfg);
  const SpectrumReport plus = channel_spectrum(channel_plus(g));
  const SpectrumReport minus = channel_spectrum(channel_minus(g));
  const Ergodicity overall = std::min(plus.ergodicity, minus.ergodicity);
  const int units = unit_eigenspace_dim(TransferOperator(g, 1).dense());
  const auto family = eigen_family(cfg);
  Table t{"classify", {"property", "value"}, {}, {}, 0.0};
  auto add = [&](std::string key, Cell value) { t.rows.push_back({std::move(key), std::move(value)}); };
  add("gate", g.label());
  add("dual_unitary", cell(is_dual_unitary(g)));
  add("class", std::string(to_string(overall)));
  add("plus_class", std::string(to_string(plus.ergodicity)));
  add("plus_decay_rate", plus.decay_rate);
  add("minus_class", std::string(to_string(minus.ergodicity)));
  add("minus_decay_rate", minus.decay_rate);
  add("unit_eigenvectors_n1", static_cast<long long>(units));
  add("extra_unit_eigenvectors", cell(units > 1));
  add("eigen_family", family ? std::string(to_string(*family)) : std::string("none"));
  return t;
}

Table cmd_corr(const RunConfig& cfg) {
  const Gate g = make_gate(cfg);
  std::vector<std::pair<OperatorSpec, OperatorSpec>> pairs;
  if (cfg.all_pauli_pairs) {
    for (const char* a : {"x", "y", "z"})
      for (const char* b : {"x", "y", "z"}) pairs.emplace_back(OperatorSpec::parse(a), OperatorSpec::parse(b));
  } else {
    pairs.emplace_back(cfg.alpha, cfg.beta);
  }
  const ChainSpec spec(g, cfg.chain_length);
  const int per_pair = cfg.tmax + 1;
  auto blocks = parallel_map(static_cast<int>(pairs.size()) * per_pair, cfg.threads, [&](int task) {
    const auto& [alpha, beta] = pairs[task / per_pair];
    const int t = task % per_pair;
    const Mat sa = alpha.normalized().matrix(), sb = beta.normalized().matrix();
    RowBlock block;
    for (int x = -t; x <= t; ++x) {
      std::optional<double> transfer, oracle, closed;
      if (x == t && wants(cfg, MethodSelection::transfer))
        transfer = lightcone_correlator(g, sa, sb, t, Direction::plus).real();
      if (2 * t < spec.length() && wants(cfg, MethodSelection::oracle))
        oracle = oracle_correlator(spec, sa, x, sb, t).real();
      if (x == t && wants(cfg, MethodSelection::closed_form)) closed = corr_closed_form(cfg, alpha, beta, t);
      const auto delta = max_pairwise_delta({transfer, oracle, closed});
      if (delta) block.max_delta = std::max(block.max_delta, *delta);
      block.rows.push_back({label(alpha), label(beta), static_cast<long long>(x), static_cast<long long>(t),
                            cell(transfer), cell(oracle), cell(closed), cell(delta)});
    }
    return block;
  });
  return collect("corr", {"alpha", "beta", "x", "t", "transfer", "oracle", "closed_form", "delta"},
                 std::move(blocks));
}

Table cmd_otoc(const RunConfig& cfg) {
  const Gate g = make_gate(cfg);
  const Mat sa = cfg.alpha.normalized().matrix(), sb = cfg.beta.normalized().matrix();
  const ChainSpec spec(g, cfg.chain_length);
  const TransferBudget budget;
  const auto family = eigen_family(cfg);
  const auto a = traceless_coeffs(cfg.alpha), b = traceless_coeffs(cfg.beta);
  // One task per diagonal t - x = d; successive x are successive powers of T.
  auto blocks = parallel_map(cfg.tmax + 1, cfg.threads, [&](int d) {
    RowBlock block;
    const ConeCoordinates cc = cone_coordinates(0, d);
    const bool in_budget = transfer_dim(g.dim(), cc.depth) <= budget.vector_dim;
    std::optional<RealTransferOperator> rop;
    std::optional<SplitState> state;
    Vec left;
    if (in_budget && wants(cfg, MethodSelection::transfer)) {
      const TransferOperator op(g, cc.depth, budget);
      rop.emplace(g, cc.depth, budget);
      left = rop->to_basis_left(boundary_left(sa, cc.depth).vec);
      state.emplace(rop->to_basis_right(boundary_right(op, sb, cc.parity).vec));
      for (int s = 0; s < cc.steps; ++s) state->step(*rop);
    }
    const auto asymptote = otoc_asymptote(cfg, g, cfg.alpha, cfg.beta, d);
    for (int x = 0; x + d <= cfg.tmax; ++x) {
      const int t = x + d;
      if (state && x > 0) state->step(*rop);
      std::optional<double> transfer, oracle, closed;
      if (state) transfer = state->overlap(left).real();
      if (2 * t < spec.length() && wants(cfg, MethodSelection::oracle))
        oracle = oracle_otoc(spec, sa, sb, x, t).real();
      if (family == EigenFamily::integrable_kim && a && b && wants(cfg, MethodSelection::closed_form))
        closed = kim_integrable_otoc_corrected(*a, *b, x, t);
      const auto delta = max_pairwise_delta({transfer, oracle, closed});
      if (delta) block.max_delta = std::max(block.max_delta, *delta);
      block.rows.push_back({static_cast<long long>(x), static_cast<long long>(t), static_cast<long long>(d),
                            std::string(to_string(cc.parity)), cell(transfer), cell(oracle), cell(closed),
                            cell(wants(cfg, MethodSelection::closed_form) ? asymptote : std::nullopt),
                            cell(delta)});
    }
    return block;
  });
  Table t = collect("otoc",
                    {"x", "t", "t_minus_x", "parity", "transfer", "oracle", "closed_form", "asymptote", "delta"},
                    std::move(blocks));
  for (int d = 0; d <= cfg.tmax; ++d) {
    const int depth = cone_coordinates(0, d).depth;
    if (transfer_dim(g.dim(), depth) > budget.vector_dim) {
      t.notes.push_back("transfer values with t - x >= " + std::to_string(d) + " exceed the vector budget");
      break;
    }
  }
  return t;
}

Table cmd_longtime(const RunConfig& cfg) {
  const Gate g = make_gate(cfg);
  const Mat sa = cfg.alpha.normalized().matrix(), sb = cfg.beta.normalized().matrix();
  const TransferBudget budget;
  const auto family = eigen_family(cfg);
  IterationOptions opt;
  opt.tol = std::min(opt.tol, 1e-2 * cfg.delta_tol);
  auto blocks = parallel_map(2 * cfg.nmax, cfg.threads, [&](int task) {
    const int n = task / 2 + 1;
    const Parity parity = task % 2 == 0 ? Parity::even : Parity::odd;
    const int d = longtime_offset(n, parity);
    RowBlock block;
    std::optional<double> iterate, projector, closed, amplitude;
    std::optional<OtocResult> it;
    const bool in_budget = transfer_dim(g.dim(), n) <= budget.vector_dim;
    if (in_budget && wants(cfg, MethodSelection::transfer)) {
      it = otoc_longtime(g, sa, sb, n, parity, budget, opt);
      iterate = it->value;
      amplitude = it->amplitude;
      if (family) projector = otoc_longtime_projector(g, sa, sb, n, parity, *family, budget).value;
    }
    if (wants(cfg, MethodSelection::closed_form)) closed = otoc_asymptote(cfg, g, cfg.alpha, cfg.beta, d);
    const auto delta = max_pairwise_delta({iterate, projector, closed});
    if (delta) block.max_delta = *delta;
    block.rows.push_back({static_cast<long long>(n), std::string(to_string(parity)), static_cast<long long>(d),
                          cell(iterate), cell(projector), cell(closed), cell(delta),
                          it ? Cell(static_cast<long long>(it->iterations)) : Cell{}, cell(amplitude),
                          it ? cell(it->converged) : Cell{}});
    return block;
  });
  Table t = collect("longtime",
                    {"n", "parity", "t_minus_x", "iterate", "projector", "closed_form", "delta", "iterations",
                     "amplitude", "converged"},
                    std::move(blocks));
  if (transfer_dim(g.dim(), cfg.nmax) > budget.vector_dim)
    t.notes.push_back("transfer values above the vector budget are left empty");
  return t;
}

Table cmd_spectrum(const RunConfig& cfg) {
  const Gate g = make_gate(cfg);
  Table t{"spectrum", {"object", "n", "index", "re", "im", "abs"}, {}, {}, 0.0};
  auto add = [&](const std::string& name, int n, const std::vector<cplx>& ev) {
    for (std::size_t i = 0; i < ev.size(); ++i)
      t.rows.push_back({name, static_cast<long long>(n), static_cast<long long>(i), ev[i].real(), ev[i].imag(),
                        std::abs(ev[i])});
  };
  add("M+", 0, channel_spectrum(channel_plus(g)).eigenvalues);
  add("M-", 0, channel_spectrum(channel_minus(g)).eigenvalues);
  for (int n = 1; n <= cfg.nmax; ++n) {
    if (transfer_dim(g.dim(), n) > kSpectrumDim) {
      t.notes.push_back("transfer spectra with n >= " + std::to_string(n) + " exceed the spectrum budget");
      break;
    }
    add("T", n, eigenvalues_by_modulus(TransferOperator(g, n).dense()));
  }
  return t;
}

Table cmd_oracle_check(const RunConfig& cfg) {
  const Gate g = make_gate(cfg);
  const Mat sa = cfg.alpha.normalized().matrix(), sb = cfg.beta.normalized().matrix();
  const ChainSpec spec(g, cfg.chain_length);
  const int tmax = std::min(cfg.tmax, (spec.length() - 1) / 2);
  auto blocks = parallel_map(tmax + 1, cfg.threads, [&](int t) {
    RowBlock block;
    auto push = [&](const char* kind, int x, double transfer, double oracle) {
      const double delta = std::abs(transfer - oracle);
      block.max_delta = std::max(block.max_delta, delta);
      block.rows.push_back({std::string(kind), static_cast<long long>(x), static_cast<long long>(t), transfer,
                            oracle, delta});
    };
    for (int x = 0; x <= t; ++x)
      push("otoc", x, otoc_finite(g, sa, sb, x, t).value, oracle_otoc(spec, sa, sb, x, t).real());
    push("corr", t, lightcone_correlator(g, sa, sb, t).real(), oracle_correlator(spec, sa, t, sb, t).real());
    return block;
  });
  Table t = collect("oracle-check", {"kind", "x", "t", "transfer", "oracle", "delta"}, std::move(blocks));
  if (tmax < cfg.tmax)
    t.notes.push_back("oracle rows stop at t = " + std::to_string(tmax) + " (light cone must not wrap)");
  return t;
}

Table run_command(const std::string& name, const RunConfig& cfg) {
  if (name == "classify") return cmd_classify(cfg);
  if (name == "corr") return cmd_corr(cfg);
  if (name == "otoc") return cmd_otoc(cfg);
  if (name == "longtime") return cmd_longtime(cfg);
  if (name == "spectrum") return cmd_spectrum(cfg);
  if (name == "oracle-check") return cmd_oracle_check(cfg);
  throw Error("unknown command '" + name + "'");
}

std::string format_csv(const Table& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const Row& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, long long>) {
              out << v;
            } else if constexpr (std::is_same_v<V, double>) {
              out << format_double(v);
            } else if constexpr (std::is_same_v<V, std::string>) {
              if (v.find_first_of(",\"") == std::string::npos) {
                out << v;
              } else {
                out << '"';
                for (char c : v) out << (c == '"' ? "\"\"" : std::string(1, c));
                out << '"';
              }
            }
          },
          row[i]);
    }
    out << '\n';
  }
  return out.str();
}

nlohmann::json format_json(const Table& table, const RunConfig& cfg) {
  nlohmann::json j;
  j["command"] = table.command;
  j["config"] = cfg.to_json();
  j["columns"] = table.header;
  j["notes"] = table.notes;
  nlohmann::json rows = nlohmann::json::array();
  for (const Row& row : table.rows) {
    nlohmann::json r = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i)
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, std::monostate>)
              r[table.header[i]] = nullptr;
            else
              r[table.header[i]] = v;
          },
          row[i]);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

int emit(const Table& table, const RunConfig& cfg, std::ostream& console, std::ostream& diagnostics) {
  for (const auto& note : table.notes) diagnostics << "note: " << note << '\n';
  const bool json = cfg.format == "json";
  const std::string body = json ? format_json(table, cfg).dump(2) + "\n" : format_csv(table);
  if (cfg.out.empty()) {
    console << body;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw Error("cannot write " + cfg.out);
    f << body;
    if (!json) {
      nlohmann::json side = format_json(table, cfg);
      side.erase("rows");
      std::ofstream s(cfg.out + ".json", std::ios::binary);
      if (!s) throw Error("cannot write " + cfg.out + ".json");
      s << side.dump(2) << '\n';
    }
  }
  if (cfg.strict && table.max_delta > cfg.delta_tol) {
    diagnostics << "error: cross-method delta " << format_double(table.max_delta) << " exceeds tolerance "
                << format_double(cfg.delta_tol) << '\n';
    return 3;
  }
  return 0;
}

}  // namespace mvc::cli
