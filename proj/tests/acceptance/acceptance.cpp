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

// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "../test_support.hpp"

namespace mvc {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> log;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const PauliCoeffs kFig4Alpha = PauliCoeffs{1.0, 0.0, 1.0}.normalized();
const PauliCoeffs kFig4Beta{0.0, 1.0, 0.0};
const PauliCoeffs kFig7Alpha{1 / std::sqrt(6.0), 1 / std::sqrt(2.0), 1 / std::sqrt(3.0)};
const PauliCoeffs kFig7Beta{1 / std::sqrt(6.0), -1 / std::sqrt(2.0), 1 / std::sqrt(3.0)};

std::vector<Mat> probe_operators() {
  std::vector<Mat> ops{pauli::x(), pauli::y(), pauli::z()};
  std::mt19937_64 rng(2026);
  ops.push_back(testing::random_direction(rng).matrix());
  return ops;
}

Outcome oracle_equivalence() {
  Outcome o;
  double worst = 0.0;
  int points = 0;
  const auto ops = probe_operators();
  for (const Gate& g : testing::family_gates()) {
    const ChainSpec spec(g, 8);
    for (const Mat& sa : ops)
      for (const Mat& sb : ops)
        for (int t = 0; t <= 3; ++t)
          for (int x = 0; x <= t; ++x) {
            const OtocResult r = otoc_finite(g, sa, sb, x, t);
            worst = std::max(worst, std::abs(cplx(r.value, r.imag) - oracle_otoc(spec, sa, sb, x, t)));
            ++points;
          }
  }
  o.pass = worst < 1e-10;
  o.detail = fmt("%d points over 8 gates, max |delta| %.2e", points, worst);
  return o;
}

Outcome maximally_chaotic() {
  Outcome o;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Gate g = random_dual_unitary(seed);
    for (int n = 1; n <= 3; ++n) {
      const OtocResult r = otoc_longtime(g, pauli::x(), pauli::x(), n, Parity::even);
      const double expect = n == 1 ? -1.0 / 3.0 : 0.0;
      worst = std::max(worst, std::abs(r.value - expect));
      o.pass = o.pass && r.converged;
    }
  }
  o.pass = o.pass && worst < 1e-8;
  o.detail = fmt("10 seeds, n = 1..3 even parity, max error %.2e", worst);
  return o;
}

Outcome kim_closed_forms() {
  Outcome o;
  const Gate g = build_kim({0.4, 0.6});
  const Mat sa = kFig4Alpha.matrix(), sb = kFig4Beta.matrix();
  double worst = 0.0;
  std::vector<double> odd;
  for (int n = 1; n <= 5; ++n)
    for (Parity p : {Parity::even, Parity::odd}) {
      const OtocResult r = otoc_longtime(g, sa, sb, n, p);
      const double expect = kim_longtime(0.4, 0.6, kFig4Alpha, kFig4Beta, r.t_minus_x);
      worst = std::max(worst, std::abs(r.value - expect));
      o.pass = o.pass && r.converged;
      if (p == Parity::odd) odd.push_back(r.value);
      if (n == 1 && p == Parity::even) {
        o.pass = o.pass && std::abs(r.value + 0.5) < 1e-8;
        o.log.push_back(fmt("x = t value %.12f", r.value));
      }
    }
  double slope_err = 0.0;
  for (std::size_t i = 1; i + 1 < odd.size(); ++i) {
    const double slope = std::log(std::abs(odd[i + 1])) - std::log(std::abs(odd[i]));
    slope_err = std::max(slope_err, std::abs(slope - 2 * std::log(std::cos(1.0))));
  }
  o.pass = o.pass && worst < 1e-8 && slope_err < 1e-6;
  o.detail = fmt("n = 1..5 both parities, max error %.2e, log-slope error %.2e", worst, slope_err);
  return o;
}

Outcome kim_correlator_check() {
  Outcome o;
  const Gate g = build_kim({0.4, 0.6});
  double worst = 0.0;
  std::mt19937_64 rng(7);
  std::vector<std::pair<PauliCoeffs, PauliCoeffs>> pairs{{kFig4Alpha, kFig4Beta}};
  for (int i = 0; i < 3; ++i) pairs.emplace_back(testing::random_direction(rng), testing::random_direction(rng));
  for (const auto& [a, b] : pairs)
    for (int t = 1; t <= 10; ++t) {
      const cplx c = lightcone_correlator(g, a.matrix(), b.matrix(), t);
      worst = std::max(worst, std::abs(c - kim_correlator(0.4, 0.6, a, b, t)));
    }
  o.pass = worst < 1e-12;
  o.detail = fmt("t = 1..10, preset and 3 random operator pairs, max error %.2e", worst);
  return o;
}

Outcome integrable_kim() {
  Outcome o;
  const Gate g = build_kim({0.0, 0.0});
  double idem = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const TransferOperator op(g, n);
    const Mat t = op.dense();
    Mat t2(t.rows(), t.cols());
    for (Index c = 0; c < t.cols(); ++c) t2.col(c) = op.apply(t.col(c));
    idem = std::max(idem, max_abs(t2 - t));
  }
  o.log.push_back(fmt("max |T^2 - T| over n = 1..3: %.2e", idem));

  // OTOC values at fixed (t - x) for one or more transfer steps.
  const Mat sa = kFig7Alpha.matrix(), sb = kFig7Beta.matrix();
  double spread = 0.0;
  for (int tx = 0; tx <= 3; ++tx) {
    std::optional<double> first;
    for (int x = 0; x <= 6; ++x) {
      if (cone_coordinates(x, x + tx).steps < 1) continue;
      const double v = otoc_finite(g, sa, sb, x, x + tx).value;
      if (!first) first = v;
      spread = std::max(spread, std::abs(v - *first));
    }
  }
  o.log.push_back(fmt("max spread across steps at fixed t - x: %.2e", spread));

  const TransferOperator op2(g, 2);
  int rule_failures = 0;
  const Mat paulis[4] = {pauli::identity(), pauli::x(), pauli::y(), pauli::z()};
  for (int code = 0; code < 256; ++code) {
    std::vector<Mat> slots;
    int yz = 0;
    for (int s = 0; s < 4; ++s) {
      const int p = (code >> (2 * s)) & 3;
      yz += p >= 2;
      slots.push_back(paulis[p]);
    }
    if (eigen_residual(op2, slot_product_state(slots), yz % 2 == 0 ? 1.0 : 0.0) > 1e-10) ++rule_failures;
  }
  o.log.push_back(fmt("product-state rule failures at n = 2: %d of 256", rule_failures));

  // Odd-parity branch adjudicated against the oracle.
  const ChainSpec spec(g, 8);
  std::mt19937_64 rng(9);
  double reference = 0.0, corrected = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    const PauliCoeffs a = trial == 0 ? kFig7Alpha : testing::random_direction(rng);
    const PauliCoeffs b = trial == 0 ? kFig7Beta : testing::random_direction(rng);
    for (int t = 1; t <= 3; ++t)
      for (int x = t - 1; x >= 0; x -= 2) {
        const double truth = oracle_otoc(spec, a.matrix(), b.matrix(), x, t).real();
        reference = std::max(reference, std::abs(kim_integrable_otoc(a, b, x, t) - truth));
        corrected = std::max(corrected, std::abs(kim_integrable_otoc_corrected(a, b, x, t) - truth));
      }
  }
  const bool verdict_clear = (reference < 1e-10) != (corrected < 1e-10);
  o.log.push_back(fmt("odd-parity closed form vs oracle: reference (1 - ax)^2 form max error %.2e, "
                      "(1 - ax^2) variant max error %.2e",
                      reference, corrected));
  o.log.push_back(std::string("verdict: ") + (corrected < 1e-10 && reference >= 1e-10   ? "(1 - ax^2) variant holds"
                                              : reference < 1e-10 && corrected >= 1e-10 ? "reference (1 - ax)^2 form holds"
                                                                                      : "inconclusive"));
  o.pass = idem < 1e-10 && spread < 1e-10 && rule_failures == 0 && verdict_clear;
  o.detail = fmt("idempotent %.1e, step spread %.1e, rule failures %d", idem, spread, rule_failures);
  return o;
}

Outcome kicked_xy() {
  Outcome o;
  const Mat sa = kFig7Alpha.matrix(), sb = kFig7Beta.matrix();
  double table = 0.0, jdep = 0.0, corr = 0.0;
  std::vector<double> base;
  for (double j : {kPi / 10, kPi / 6, kPi / 5}) {
    const Gate g = build_xy({j});
    std::vector<double> values;
    for (int tx = 0; tx <= 8; ++tx) {
      const int n = tx / 2 + 1;
      const OtocResult r = otoc_longtime(g, sa, sb, n, tx % 2 == 0 ? Parity::even : Parity::odd);
      o.pass = o.pass && r.converged && r.t_minus_x == tx;
      values.push_back(r.value);
      if (j == kPi / 10) table = std::max(table, std::abs(r.value - xy_longtime(kFig7Alpha, kFig7Beta, tx)));
    }
    if (base.empty()) base = values;
    for (std::size_t i = 0; i < values.size(); ++i) jdep = std::max(jdep, std::abs(values[i] - base[i]));
    for (int t = 0; t <= 10; ++t)
      corr = std::max(corr, std::abs(lightcone_correlator(g, sa, sb, t) - xy_correlator(j, kFig7Alpha, kFig7Beta, t)));
  }
  o.pass = o.pass && table < 1e-8 && jdep < 1e-8 && corr < 1e-12;
  o.detail = fmt("table error %.2e, J spread %.2e, correlator error %.2e", table, jdep, corr);
  return o;
}

Outcome overlap_orthogonality() {
  Outcome o;
  for (int n = 2; n <= 4; ++n) {
    const Eigen::MatrixXd g = xy_overlap_matrix(n);
    const Eigen::MatrixXd expect = std::pow(2.0, 3 * n) * Eigen::MatrixXd::Identity(g.rows(), g.cols());
    const double err = (g * g.transpose() - expect).cwiseAbs().maxCoeff();
    o.pass = o.pass && err == 0.0;
    o.log.push_back(fmt("n = %d: max |G G^T - 2^%d I| = %g", n, 3 * n, err));
  }
  o.detail = "n = 2, 3, 4 exact";
  return o;
}

Outcome haar_equivalence() {
  Outcome o;
  const Mat p = haar_projector(2);
  const Vec e0 = e_tilde(LocalDim(2), 1, 0), e1 = e_tilde(LocalDim(2), 1, 1);
  const double analytic = max_abs(p - (e0 * e0.transpose() + e1 * e1.transpose()));
  std::mt19937_64 rng(2021);
  const int samples = 100000;
  Mat avg = Mat::Zero(16, 16);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(16, 16);
  for (int s = 0; s < samples; ++s) {
    const Mat u = haar_sample(2, rng);
    const Mat uu = kron(u, u.conjugate());
    const Mat k = kron(uu, uu);
    avg += k;
    second += k.cwiseAbs2();
  }
  avg /= double(samples);
  second /= double(samples);
  const Eigen::MatrixXd std_err = ((second - avg.cwiseAbs2()) / double(samples)).cwiseSqrt();
  const double mc = max_abs(avg - p);
  o.log.push_back(fmt("largest entry standard error %.2e, largest |error| / standard error %.2f", std_err.maxCoeff(),
                      ((avg - p).cwiseAbs().array() / std_err.array().max(1e-300)).maxCoeff()));
  o.pass = analytic < 1e-12 && mc < 3e-3;
  o.detail = fmt("eigenbasis projector error %.2e, %d-sample average error %.2e", analytic, samples, mc);
  return o;
}

Outcome generic_circuits() {
  Outcome o;
  double worst = 0.0;
  for (std::uint64_t seed = 100; seed < 105; ++seed) {
    const Gate g = random_kak(seed);
    o.pass = o.pass && !is_dual_unitary(g);
    for (Parity p : {Parity::even, Parity::odd}) {
      const OtocResult r = otoc_longtime(g, pauli::x(), pauli::z(), 1, p);
      o.pass = o.pass && r.converged;
      worst = std::max(worst, std::abs(r.value - 1.0));
    }
  }
  o.pass = o.pass && worst < 1e-8;
  o.detail = fmt("5 gates, n = 1 both parities, max |value - 1| %.2e", worst);
  return o;
}

Outcome property_suites() {
  Outcome o;
  double channel = 0.0, fixed = 0.0, eig = 0.0, cone = 0.0;
  const auto ops = probe_operators();
  for (const Gate& g : testing::family_gates()) {
    for (const Channel& ch : {channel_plus(g), channel_minus(g)}) {
      const Mat& m = ch.matrix();
      channel = std::max(channel, (m.col(0) - Vec::Unit(4, 0)).cwiseAbs().maxCoeff());
      channel = std::max(channel, (m.row(0).transpose() - Vec::Unit(4, 0)).cwiseAbs().maxCoeff());
      const Eigen::SelfAdjointEigenSolver<Mat> choi(ch.choi());
      channel = std::max(channel, std::max(0.0, -choi.eigenvalues().minCoeff()));
    }
    const bool du = is_dual_unitary(g);
    const bool kim = g.label().rfind("kim", 0) == 0;
    const bool xy = g.label().rfind("xy", 0) == 0;
    for (int n = 1; n <= 3; ++n) {
      const TransferOperator op(g, n);
      fixed = std::max(fixed, fixed_point_residual(op));
      if (du)
        for (int k = 0; k <= n; ++k) {
          const Vec e = e_state(LocalDim(2), n, k);
          eig = std::max({eig, eigen_residual(op, e, 1.0), eigen_residual(op, e, 1.0, true)});
        }
      if (kim && du)
        for (int k = 1; k <= n; ++k) {
          const Vec z = z_state(n, k);
          eig = std::max({eig, eigen_residual(op, z, 1.0), eigen_residual(op, z, 1.0, true)});
        }
      if (xy)
        for (const Bits& b : all_bitstrings(n))
          eig = std::max({eig, eigen_residual(op, xy_right_vec(b), 1.0), eigen_residual(op, xy_left_vec(b), 1.0, true)});
    }
    const ChainSpec spec(g, 8);
    for (const Mat& sa : ops)
      for (const Mat& sb : ops)
        for (int t = 0; t <= 3; ++t) {
          cone = std::max(cone, std::abs(otoc_finite(g, sa, sb, t + 1, t).value - 1.0));
          cone = std::max(cone, std::abs(oracle_otoc(spec, sa, sb, t + 1, t) - 1.0));
          cone = std::max(cone, std::abs(oracle_correlator(spec, sa, -t - 1, sb, t)));
          if (t >= 1) {
            const Mat a = evolve_backward_cone(spec, sa, t, 0).op;
            const Mat b = detail::site_operator(spec, sb, t + 1);
            cone = std::max(cone, max_abs(a * b - b * a));
          }
        }
  }
  o.pass = channel < 1e-10 && fixed < 1e-10 && eig < 1e-10 && cone < 1e-10;
  o.detail = fmt("channel %.1e, fixed points %.1e, eigenoperators %.1e, light cone %.1e", channel, fixed, eig, cone);
  return o;
}

}  // namespace
}  // namespace mvc

int main() {
  using namespace mvc;
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", 120, oracle_equivalence},
      {2, "maximally chaotic limit", 30, maximally_chaotic},
      {3, "kicked Ising closed forms", 60, kim_closed_forms},
      {4, "kicked Ising correlator", 1, kim_correlator_check},
      {5, "integrable kicked Ising projector", 60, integrable_kim},
      {6, "kicked XY", 120, kicked_xy},
      {7, "overlap orthogonality", 10, overlap_orthogonality},
      {8, "Haar equivalence", 30, haar_equivalence},
      {9, "generic circuits", 30, generic_circuits},
      {10, "property suites", 120, property_suites},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.pass && secs < c.budget_s;
    failed += !pass;
    for (const auto& line : o.log) std::printf("  [%d] %s\n", c.id, line.c_str());
    std::printf("%s %2d %s: %s (%.2f s, budget %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                o.detail.c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
