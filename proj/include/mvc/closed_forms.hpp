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

#ifndef MVC_CLOSED_FORMS_HPP
#define MVC_CLOSED_FORMS_HPP

#include <functional>

#include "mvc/operator_algebra.hpp"

namespace mvc {

// Analytic OTOC and correlator values. Operators are normalized traceless
// qubit operators given by their Pauli coefficients. Formulas are kept
// unsimplified.

/// Long-time OTOC of a maximally chaotic dual-unitary circuit. `m` returns
/// the kernel M_n(sb) of the circuit's light-cone channel.
inline double mc_longtime(int q, int t_minus_x, const std::function<double(int)>& m) {
  if (t_minus_x < 0) throw Error("mc_longtime: requires x <= t");
  const double q2 = double(q) * q;
  if (t_minus_x % 2 == 0) return t_minus_x == 0 ? -1.0 / (q2 - 1.0) : 0.0;
  return (q2 * m((t_minus_x + 1) / 2) - m((t_minus_x - 1) / 2)) / (q2 - 1.0);
}

/// Long-time OTOC of the self-dual kicked Ising circuit.
inline double kim_longtime(double h1, double h2, const PauliCoeffs& a, const PauliCoeffs& b, int t_minus_x) {
  if (t_minus_x < 0) throw Error("kim_longtime: requires x <= t");
  const double az2 = a.z * a.z;
  if (t_minus_x % 2 == 0) {
    const double bz2 = b.z * b.z;
    return t_minus_x == 0 ? 3.0 * bz2 * az2 - az2 - bz2 : 0.0;
  }
  const double pre = std::pow(b.x * std::cos(h1) - b.y * std::sin(h1), 2);
  if (t_minus_x == 1) return (1.0 + az2) * pre - az2;
  const double c = std::cos(h1 + h2), s = std::sin(h1 + h2);
  return pre * std::pow(c, t_minus_x - 3) * (c * c - az2 * s * s);
}

/// Light-cone correlator of the self-dual kicked Ising circuit.
inline double kim_correlator(double h1, double h2, const PauliCoeffs& a, const PauliCoeffs& b, int t) {
  if (t < 0) throw Error("kim_correlator: t must be non-negative");
  if (t == 0) return a.dot(b);
  return std::pow(std::cos(h1 + h2), t - 1) * (a.x * std::cos(h2) + a.y * std::sin(h2)) *
         (b.x * std::cos(h1) - b.y * std::sin(h1));
}

/// OTOC of the integrable kicked Ising circuit (h1 = h2 = 0), with the
/// odd-parity factor (1 - a_x)^2. Brute-force simulation supports
/// kim_integrable_otoc_corrected instead.
inline double kim_integrable_otoc(const PauliCoeffs& a, const PauliCoeffs& b, int x, int t) {
  if (std::abs(x) > t) return 1.0;
  if (t == 0) return 2.0 * a.dot(b) * a.dot(b) - 1.0;
  if ((t - x) % 2 == 0) {
    if (x != t) return 1.0;
    const double yz = a.y * b.y + a.z * b.z;
    return 2.0 * (yz * yz + a.x * a.x * b.x * b.x) - 1.0;
  }
  return a.x * a.x + (1.0 - a.x) * (1.0 - a.x) * (2.0 * b.x * b.x - 1.0);
}

/// As kim_integrable_otoc, with the odd-parity factor (1 - a_x^2) that the
/// brute-force simulation supports.
inline double kim_integrable_otoc_corrected(const PauliCoeffs& a, const PauliCoeffs& b, int x, int t) {
  if (std::abs(x) > t || (t - x) % 2 == 0) return kim_integrable_otoc(a, b, x, t);
  return a.x * a.x + (1.0 - a.x * a.x) * (2.0 * b.x * b.x - 1.0);
}

inline double kim_integrable_correlator(const PauliCoeffs& a, const PauliCoeffs& b, int t) {
  if (t < 0) throw Error("kim_integrable_correlator: t must be non-negative");
  return t == 0 ? a.dot(b) : a.x * b.x;
}

/// Long-time OTOC of the kicked XY circuit; period four in (t - x) off the cone.
inline double xy_longtime(const PauliCoeffs& a, const PauliCoeffs& b, int t_minus_x) {
  if (t_minus_x < 0) throw Error("xy_longtime: requires x <= t");
  const double ax2 = a.x * a.x, ay2 = a.y * a.y, az2 = a.z * a.z;
  const double bx2 = b.x * b.x, by2 = b.y * b.y, bz2 = b.z * b.z;
  if (t_minus_x == 0) return ay2 + (1.0 - ay2) * (2.0 * bz2 - 1.0);
  switch (t_minus_x % 4) {
    case 0:
      return 2.0 * (bx2 * ax2 + by2 * ay2 + bz2 * az2) - 1.0;
    case 1:
      return ay2 + (1.0 - ay2) * (2.0 * bx2 - 1.0);
    case 2:
      return 2.0 * (bx2 * ax2 + by2 * az2 + bz2 * ay2) - 1.0;
    default:
      return az2 + (1.0 - az2) * (2.0 * bx2 - 1.0);
  }
}

inline double xy_correlator(double j, const PauliCoeffs& a, const PauliCoeffs& b, int t) {
  if (t < 0) throw Error("xy_correlator: t must be non-negative");
  return t == 0 ? a.dot(b) : a.x * b.x * std::pow(std::sin(2.0 * j), t);
}

/// Haar average of u (x) conj(u) (x) u (x) conj(u), rows (a,b,c,d) and
/// columns (a',b',c',d').
inline Mat haar_projector(int q) {
  if (q < 2) throw Error("haar_projector: q must be at least 2");
  const int q4 = q * q * q * q;
  const double qq = q;
  Mat p(q4, q4);
  auto delta = [](int i, int j) { return i == j ? 1.0 : 0.0; };
  for (int r = 0; r < q4; ++r)
    for (int s = 0; s < q4; ++s) {
      const int a = r / (q * q * q), b = (r / (q * q)) % q, c = (r / q) % q, d = r % q;
      const int a2 = s / (q * q * q), b2 = (s / (q * q)) % q, c2 = (s / q) % q, d2 = s % q;
      const double pair = delta(a, b) * delta(c, d), swap = delta(a, d) * delta(b, c);
      const double pair2 = delta(a2, b2) * delta(c2, d2), swap2 = delta(a2, d2) * delta(b2, c2);
      p(r, s) = (pair * pair2 + swap * swap2 - (pair * swap2 + swap * pair2) / qq) / (qq * qq - 1.0);
    }
  return p;
}

}  // namespace mvc

#endif  // MVC_CLOSED_FORMS_HPP
