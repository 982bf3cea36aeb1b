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

#ifndef MVC_CHANNELS_HPP
#define MVC_CHANNELS_HPP

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <string_view>
#include <vector>

#include "mvc/operator_algebra.hpp"

namespace mvc {

/// Tolerance for "eigenvalue equals one" tests on channel spectra.
inline constexpr double kEigTol = 1e-8;

enum class Direction { plus, minus };

/// Light-cone channel in an orthonormal operator basis:
/// mat(a,b) = tr[ops[a]^dag M(ops[b])]/q.
class Channel {
 public:
  Channel(Mat mat, Direction dir, OperatorBasis basis)
      : mat_(std::move(mat)), dir_(dir), basis_(std::move(basis)) {}

  const Mat& matrix() const { return mat_; }
  Direction direction() const { return dir_; }
  const OperatorBasis& basis() const { return basis_; }

  Mat apply(const Mat& op) const { return vec_to_op(mat_ * op_to_vec(op, basis_), basis_); }

  /// Choi matrix sum_ij |i><j| (x) M(|i><j|).
  Mat choi() const {
    const int q = basis_.dim().get();
    Mat c = Mat::Zero(q * q, q * q);
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j) {
        Mat e = Mat::Zero(q, q);
        e(i, j) = 1.0;
        c.block(i * q, j * q, q, q) = apply(e);
      }
    return c;
  }

 private:
  Mat mat_;
  Direction dir_;
  OperatorBasis basis_;
};

namespace detail {

template <class Map>
Channel build_channel(const Gate& g, Direction dir, const OperatorBasis& basis, Map&& map) {
  const int q = g.dim().get();
  const int n = basis.size();
  Mat m(n, n);
  for (int b = 0; b < n; ++b) {
    const Mat image = map(basis[b]);
    for (int a = 0; a < n; ++a) m(a, b) = (basis[a].adjoint() * image).trace() / double(q);
  }
  return Channel(std::move(m), dir, basis);
}

}  // namespace detail

/// M+(s) = tr_left[U (s (x) 1) U^dag]/q.
inline Channel channel_plus(const Gate& g) {
  const int q = g.dim().get();
  const Mat& u = g.matrix();
  const Mat one = Mat::Identity(q, q);
  return detail::build_channel(g, Direction::plus, pauli_basis(g.dim()), [&](const Mat& s) {
    return Mat(trace_left(u * kron(s, one) * u.adjoint(), q) / double(q));
  });
}

/// M-(s) = tr_right[U^dag (1 (x) s) U]/q.
inline Channel channel_minus(const Gate& g) {
  const int q = g.dim().get();
  const Mat& u = g.matrix();
  const Mat one = Mat::Identity(q, q);
  return detail::build_channel(g, Direction::minus, pauli_basis(g.dim()), [&](const Mat& s) {
    return Mat(trace_right(u.adjoint() * kron(one, s) * u, q) / double(q));
  });
}

/// tr[sa M+^t(sb)]/q, or tr[sb M-^t(sa)]/q for the minus direction.
inline cplx lightcone_correlator(const Gate& g, const Mat& sa, const Mat& sb, int t,
                                 Direction dir = Direction::plus) {
  if (t < 0) throw Error("lightcone_correlator: t must be non-negative");
  const int q = g.dim().get();
  const Channel ch = dir == Direction::plus ? channel_plus(g) : channel_minus(g);
  const Mat& evolved = dir == Direction::plus ? sb : sa;
  const Mat& probe = dir == Direction::plus ? sa : sb;
  Vec c = op_to_vec(evolved, ch.basis());
  for (int s = 0; s < t; ++s) c = ch.matrix() * c;
  return (probe * vec_to_op(c, ch.basis())).trace() / double(q);
}

enum class Ergodicity { non_interacting, non_ergodic, ergodic_non_mixing, ergodic_mixing };

inline std::string_view to_string(Ergodicity e) {
  switch (e) {
    case Ergodicity::non_interacting:
      return "non_interacting";
    case Ergodicity::non_ergodic:
      return "non_ergodic";
    case Ergodicity::ergodic_non_mixing:
      return "ergodic_non_mixing";
    case Ergodicity::ergodic_mixing:
      return "ergodic_mixing";
  }
  return "unknown";
}

struct SpectrumReport {
  std::vector<cplx> eigenvalues;  // sorted by decreasing modulus
  Ergodicity ergodicity = Ergodicity::ergodic_mixing;
  double decay_rate = 0.0;
};

inline std::vector<cplx> eigenvalues_by_modulus(const Mat& m) {
  Eigen::ComplexEigenSolver<Mat> es(m, false);
  if (es.info() != Eigen::Success) throw Error("eigensolver failed");
  std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::stable_sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return ev;
}

/// Classifies using the nontrivial spectra of M and its adjoint partner.
/// In a Hermitian basis the partner matrix is M^dag, so its spectrum is the
/// complex conjugate of M's.
inline SpectrumReport channel_spectrum(const Channel& ch) {
  SpectrumReport rep;
  rep.eigenvalues = eigenvalues_by_modulus(ch.matrix());
  std::vector<cplx> nontrivial = rep.eigenvalues;
  auto trivial = std::min_element(nontrivial.begin(), nontrivial.end(), [](cplx a, cplx b) {
    return std::abs(a - 1.0) < std::abs(b - 1.0);
  });
  nontrivial.erase(trivial);
  const std::size_t half = nontrivial.size();
  for (std::size_t i = 0; i < half; ++i) nontrivial.push_back(std::conj(nontrivial[i]));

  std::size_t ones = 0, unimodular = 0;
  for (cplx l : nontrivial) {
    rep.decay_rate = std::max(rep.decay_rate, std::abs(l));
    if (std::abs(l - 1.0) < kEigTol) ++ones;
    if (std::abs(std::abs(l) - 1.0) < kEigTol) ++unimodular;
  }
  if (!nontrivial.empty() && ones == nontrivial.size())
    rep.ergodicity = Ergodicity::non_interacting;
  else if (ones > 0)
    rep.ergodicity = Ergodicity::non_ergodic;
  else if (unimodular > 0)
    rep.ergodicity = Ergodicity::ergodic_non_mixing;
  else
    rep.ergodicity = Ergodicity::ergodic_mixing;
  return rep;
}

/// tr[M+^n(sb)^dag M+^n(sb)]/q.
inline double m_n(const Gate& g, const Mat& sb, int n) {
  if (n < 0) throw Error("m_n: n must be non-negative");
  const Channel ch = channel_plus(g);
  Vec c = op_to_vec(sb, ch.basis());
  for (int s = 0; s < n; ++s) c = ch.matrix() * c;
  return c.squaredNorm();
}

}  // namespace mvc

#endif  // MVC_CHANNELS_HPP
