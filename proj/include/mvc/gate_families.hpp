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

#ifndef MVC_GATE_FAMILIES_HPP
#define MVC_GATE_FAMILIES_HPP

#include <array>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>

#include "mvc/operator_algebra.hpp"

namespace mvc {

/// exp(-i n.sigma) for a real 3-vector n.
inline Mat su2(const std::array<double, 3>& n) {
  const double r = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  Mat m = std::cos(r) * pauli::identity();
  if (r > 0.0) {
    const Mat axis = (n[0] * pauli::x() + n[1] * pauli::y() + n[2] * pauli::z()) / r;
    m -= kI * std::sin(r) * axis;
  }
  return m;
}

/// exp(i theta P (x) P) for an involutory two-site product P (x) P.
inline Mat exp_pp(double theta, const Mat& p) {
  const Mat pp = kron(p, p);
  return std::cos(theta) * Mat::Identity(4, 4) + kI * std::sin(theta) * pp;
}

struct KakParams {
  double phase = 0.0;
  double jx = 0.0;
  double jy = 0.0;
  double jz = 0.0;
  std::array<double, 3> u_plus{};
  std::array<double, 3> u_minus{};
  std::array<double, 3> v_plus{};
  std::array<double, 3> v_minus{};
};

struct KimParams {
  double h1 = 0.0;
  double h2 = 0.0;
};

struct XyParams {
  double j = 0.0;
};

/// e^{i phase} (u+ (x) u-) exp[-i(Jx XX + Jy YY + Jz ZZ)] (v- (x) v+).
inline Gate build_kak(const KakParams& p, std::string label = "kak") {
  const Mat core = exp_pp(-p.jx, pauli::x()) * exp_pp(-p.jy, pauli::y()) *
                   exp_pp(-p.jz, pauli::z());
  Mat u = std::exp(kI * p.phase) * kron(su2(p.u_plus), su2(p.u_minus)) * core *
          kron(su2(p.v_minus), su2(p.v_plus));
  return Gate(LocalDim(2), std::move(u), std::move(label));
}

namespace detail {

inline std::array<double, 3> ball_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> box(-radius, radius);
  for (;;) {
    std::array<double, 3> n{box(rng), box(rng), box(rng)};
    if (n[0] * n[0] + n[1] * n[1] + n[2] * n[2] <= radius * radius) return n;
  }
}

inline KakParams random_kak_params(std::uint64_t seed, bool dual_unitary) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  KakParams p;
  p.phase = angle(rng);
  p.jx = dual_unitary ? kPi / 4 : angle(rng);
  p.jy = dual_unitary ? kPi / 4 : angle(rng);
  p.jz = angle(rng);
  p.u_plus = ball_point(rng, kPi);
  p.u_minus = ball_point(rng, kPi);
  p.v_plus = ball_point(rng, kPi);
  p.v_minus = ball_point(rng, kPi);
  return p;
}

}  // namespace detail

/// KAK gate with Jx = Jy = pi/4 and all other parameters drawn from `seed`.
inline Gate random_dual_unitary(std::uint64_t seed) {
  return build_kak(detail::random_kak_params(seed, true),
                   "random-du(seed=" + std::to_string(seed) + ")");
}

/// KAK gate with every parameter drawn from `seed`; generically not dual-unitary.
inline Gate random_kak(std::uint64_t seed) {
  return build_kak(detail::random_kak_params(seed, false),
                   "random-kak(seed=" + std::to_string(seed) + ")");
}

/// Self-dual kicked Ising gate; spin label +1 is index 0, -1 is index 1.
inline Gate build_kim(const KimParams& p) {
  Mat u(4, 4);
  const int spin[2] = {1, -1};
  for (int ia = 0; ia < 2; ++ia)
    for (int ib = 0; ib < 2; ++ib)
      for (int ic = 0; ic < 2; ++ic)
        for (int id = 0; id < 2; ++id) {
          const double a = spin[ia], b = spin[ib], c = spin[ic], d = spin[id];
          const double ph = kPi / 4 * (a - d) * (c - b) - p.h1 / 2 * (a + c) - p.h2 / 2 * (b + d);
          u(ia * 2 + ib, ic * 2 + id) = -0.5 * kI * std::exp(kI * ph);
        }
  std::ostringstream label;
  label.precision(17);
  label << "kim(h1=" << p.h1 << ",h2=" << p.h2 << ")";
  return Gate(LocalDim(2), std::move(u), label.str());
}

namespace detail {

struct XyIdentity {
  Mat in;
  Mat out;
  bool forward;  // true: U in U^dag = out; false: U^dag in U = out
};

inline std::array<XyIdentity, 8> xy_identities() {
  const Mat i = pauli::identity(), x = pauli::x(), y = pauli::y(), z = pauli::z();
  return {{{kron(i, i), kron(i, i), true},
           {kron(x, x), kron(x, x), true},
           {kron(i, y), kron(y, x), true},
           {kron(x, z), kron(z, i), true},
           {kron(i, i), kron(i, i), false},
           {kron(x, x), kron(x, x), false},
           {kron(y, x), kron(i, y), false},
           {kron(z, i), kron(x, z), false}}};
}

inline double xy_identity_defect(const Mat& u) {
  double worst = 0.0;
  for (const auto& id : xy_identities()) {
    const Mat got = id.forward ? Mat(u * id.in * u.adjoint()) : Mat(u.adjoint() * id.in * u);
    worst = std::max(worst, max_abs(got - id.out));
  }
  return worst;
}

}  // namespace detail

namespace detail {

inline std::array<std::pair<const char*, Mat>, 4> xy_candidates(double j) {
  const Mat coupling = exp_pp(j, pauli::z()) * exp_pp(kPi / 4, pauli::y());
  const Mat kick = std::cos(kPi / 4) * pauli::identity() + kI * std::sin(kPi / 4) * pauli::x();
  const Mat one = pauli::identity();
  return {{
      {"J.(KxI)", coupling * kron(kick, one)},
      {"J.(IxK)", coupling * kron(one, kick)},
      {"(KxI).J", kron(kick, one) * coupling},
      {"(IxK).J", kron(one, kick) * coupling},
  }};
}

}  // namespace detail

/// Kicked XY gate. The kick placement is chosen among the four candidate
/// compositions as the unique one satisfying the eight XY identities both at
/// the requested J and at a generic reference J (at |J| = pi/4 two placements
/// pass).
inline Gate build_xy(const XyParams& p) {
  constexpr double kReferenceJ = 0.3;
  const auto candidates = detail::xy_candidates(p.j);
  const auto reference = detail::xy_candidates(kReferenceJ);
  int chosen = -1;
  for (int c = 0; c < 4; ++c) {
    if (detail::xy_identity_defect(candidates[c].second) < 1e-12 &&
        detail::xy_identity_defect(reference[c].second) < 1e-12) {
      if (chosen >= 0) throw ConventionError("xy gate: kick placement is ambiguous");
      chosen = c;
    }
  }
  if (chosen < 0) throw ConventionError("xy gate: no kick placement satisfies the identities");
  std::ostringstream label;
  label.precision(17);
  label << "xy(J=" << p.j << ",placement=" << candidates[chosen].first << ")";
  return Gate(LocalDim(2), candidates[chosen].second, label.str());
}

inline Gate swap_gate(LocalDim q = LocalDim(2)) {
  const int n = q.get();
  Mat u = Mat::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) u(b * n + a, a * n + b) = 1.0;
  return Gate(q, std::move(u), "swap");
}

inline Gate identity_gate(LocalDim q = LocalDim(2)) {
  return Gate(q, Mat::Identity(q.squared(), q.squared()), "identity");
}

inline bool is_dual_unitary(const Gate& g) { return unitarity_defect(dual(g)) < kUnitTol; }

}  // namespace mvc

#endif  // MVC_GATE_FAMILIES_HPP
