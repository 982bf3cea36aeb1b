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

#ifndef MVC_ORACLE_HPP
#define MVC_ORACLE_HPP

#include <cstdint>
#include <random>
#include <utility>

#include "mvc/operator_algebra.hpp"

namespace mvc {

// Brute-force reference: dense Heisenberg evolution on a periodic chain.
//
// Sites are 0..L-1 with site 0 the most significant index. A layer of
// parity p applies the gate on every bond (s, s+1 mod L) with s = p mod 2,
// s being the gate's left site.

/// Periodic brickwork chain.
class ChainSpec {
 public:
  static constexpr int kMaxQubitEquivalents = 12;

  ChainSpec(const Gate& gate, int length = 8) : gate_(gate), length_(length) {
    if (length < 2 || length % 2 != 0) throw Error("chain length must be even and at least 2");
    if (length * std::log2(double(gate.dim().get())) > kMaxQubitEquivalents + 1e-9)
      throw BudgetError("chain exceeds the dense oracle budget of 12 qubit equivalents");
  }

  const Gate& gate() const { return gate_; }
  int length() const { return length_; }
  int q() const { return gate_.dim().get(); }
  Index hilbert_dim() const { return ipow(q(), length_); }

 private:
  Gate gate_;
  int length_;
};

/// Heisenberg-evolved operator and its bookkeeping.
struct EvolvedOperator {
  Mat op;
  int origin;
  int t;
};

namespace detail {

/// Applies a two-site matrix g on sites (s1, s2) to the row index of m, or
/// to the column index when `columns` is set (m <- m g^T).
inline void apply_two_site(Mat& m, const Mat& g, int s1, int s2, int q, int length, bool columns) {
  const Index dim = ipow(q, length);
  const Index st1 = ipow(q, length - 1 - s1);
  const Index st2 = ipow(q, length - 1 - s2);
  const int qq = q * q;
  Vec in(qq), out(qq);
  for (Index base = 0; base < dim; ++base) {
    if ((base / st1) % q != 0 || (base / st2) % q != 0) continue;
    for (Index other = 0; other < dim; ++other) {
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
          const Index k = base + a * st1 + b * st2;
          in(a * q + b) = columns ? m(other, k) : m(k, other);
        }
      out.noalias() = g * in;
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
          const Index k = base + a * st1 + b * st2;
          (columns ? m(other, k) : m(k, other)) = out(a * q + b);
        }
    }
  }
}

inline void apply_one_site(Mat& m, const Mat& g, int s, int q, int length, bool columns) {
  const Index dim = ipow(q, length);
  const Index st = ipow(q, length - 1 - s);
  Vec in(q), out(q);
  for (Index base = 0; base < dim; ++base) {
    if ((base / st) % q != 0) continue;
    for (Index other = 0; other < dim; ++other) {
      for (int a = 0; a < q; ++a) in(a) = columns ? m(other, base + a * st) : m(base + a * st, other);
      out.noalias() = g * in;
      for (int a = 0; a < q; ++a) (columns ? m(other, base + a * st) : m(base + a * st, other)) = out(a);
    }
  }
}

inline int wrap(int s, int length) { return ((s % length) + length) % length; }

/// m <- layer^dag m layer for the layer whose bonds start on sites of parity p.
inline void conjugate_by_layer(Mat& m, const ChainSpec& spec, int p) {
  const int q = spec.q(), length = spec.length();
  const Mat& u = spec.gate().matrix();
  const Mat udag = u.adjoint();
  const Mat ut = u.transpose();
  for (int s = wrap(p, 2); s < length; s += 2) {
    const int s2 = wrap(s + 1, length);
    apply_two_site(m, udag, s, s2, q, length, false);
    apply_two_site(m, ut, s, s2, q, length, true);
  }
}

inline Mat site_operator(const ChainSpec& spec, const Mat& s, int site) {
  Mat m = Mat::Identity(spec.hilbert_dim(), spec.hilbert_dim());
  apply_one_site(m, s, wrap(site, spec.length()), spec.q(), spec.length(), false);
  return m;
}

inline void require_no_wrap(const ChainSpec& spec, int t) {
  if (t < 0) throw Error("oracle: t must be non-negative");
  if (2 * t >= spec.length()) throw Error("oracle: light cone wraps around the chain (need 2t < L)");
}

}  // namespace detail

/// Dense layer unitaries (even bonds, odd bonds); one period is U_odd * U_even.
inline std::pair<Mat, Mat> layer_unitaries(const ChainSpec& spec) {
  const Index dim = spec.hilbert_dim();
  std::pair<Mat, Mat> layers{Mat::Identity(dim, dim), Mat::Identity(dim, dim)};
  for (int p = 0; p < 2; ++p) {
    Mat& m = p == 0 ? layers.first : layers.second;
    for (int s = p; s < spec.length(); s += 2)
      detail::apply_two_site(m, spec.gate().matrix(), s, detail::wrap(s + 1, spec.length()), spec.q(),
                             spec.length(), false);
  }
  return layers;
}

/// s(x, t) for the correlator lattice: layer k = 1..t acts on bonds of parity
/// (origin + k - 1), so an operator at `origin` at t = 0 is on a left leg.
inline EvolvedOperator evolve_forward_cone(const ChainSpec& spec, const Mat& s, int x, int t, int origin) {
  Mat m = detail::site_operator(spec, s, origin + x);
  for (int k = t; k >= 1; --k) detail::conjugate_by_layer(m, spec, origin + k - 1);
  return {std::move(m), origin + x, t};
}

/// s(0, t) for the OTOC lattice: layer k = 1..t acts on bonds of parity
/// (origin + t - k), so the operator sits on the left output leg of the last
/// layer.
inline EvolvedOperator evolve_backward_cone(const ChainSpec& spec, const Mat& s, int t, int origin) {
  Mat m = detail::site_operator(spec, s, origin);
  for (int k = t; k >= 1; --k) detail::conjugate_by_layer(m, spec, origin + t - k);
  return {std::move(m), origin, t};
}

/// tr(sa(x,t) sb(0,0)) / q^L.
inline cplx oracle_correlator(const ChainSpec& spec, const Mat& sa, int x, const Mat& sb, int t,
                              int origin = 0) {
  detail::require_no_wrap(spec, t);
  if (std::abs(x) > t) return 0.0;
  Mat a = evolve_forward_cone(spec, sa, x, t, origin).op;
  detail::apply_one_site(a, sb.transpose(), detail::wrap(origin, spec.length()), spec.q(), spec.length(),
                         true);
  return a.trace() / double(spec.hilbert_dim());
}

/// tr(A B A B) / q^L with A = sa(0,t), B = sb(x,0).
inline cplx oracle_otoc(const ChainSpec& spec, const Mat& sa, const Mat& sb, int x, int t, int origin = 0) {
  detail::require_no_wrap(spec, t);
  if (std::abs(x) > t) return 1.0;
  Mat ab = evolve_backward_cone(spec, sa, t, origin).op;
  detail::apply_one_site(ab, sb.transpose(), detail::wrap(origin + x, spec.length()), spec.q(),
                         spec.length(), true);
  return ab.cwiseProduct(ab.transpose()).sum() / double(spec.hilbert_dim());
}

/// Haar-random q x q unitary: QR of a complex Gaussian with the phases of
/// R's diagonal moved into Q.
inline Mat haar_sample(int q, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat z(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) z(i, j) = cplx(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Mat> qr(z);
  Mat qm = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < q; ++j) {
    const cplx d = r(j, j);
    qm.col(j) *= d / std::abs(d);
  }
  return qm;
}

inline Mat haar_sample(int q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return haar_sample(q, rng);
}

}  // namespace mvc

#endif  // MVC_ORACLE_HPP
