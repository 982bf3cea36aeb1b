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

#ifndef MVC_TRANSFER_HPP
#define MVC_TRANSFER_HPP

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvc/operator_algebra.hpp"

namespace mvc {

// Vector layout of the column space.
//
// A column of depth n has n legs, each carrying four copies of the local
// space: (A, B) for the first replica (ket, bra) and (C, D) for the second.
// Vectors are stored copy-major: index ((A*d + B)*d + C)*d + D with d = q^n,
// where each copy index runs over the n legs with leg 1 most significant.
// A leg tensor f has q^4 entries indexed ((a*q + b)*q + c)*q + d.

struct TransferBudget {
  Index dense_dim = 4096;      // largest materialized q^{4n} x q^{4n} matrix
  Index vector_dim = 1 << 20;  // largest q^{4n} vector for matrix-free use
};

inline Index transfer_dim(LocalDim q, int n) { return ipow(q.get(), 4 * n); }

enum class Parity { even, odd };

inline std::string_view to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

/// Parity of (x - t).
inline Parity parity_of(int x, int t) { return ((x - t) % 2 == 0) ? Parity::even : Parity::odd; }

namespace legs {

inline Vec make(int q, auto&& f) {
  Vec v(q * q * q * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int c = 0; c < q; ++c)
        for (int d = 0; d < q; ++d) v(((a * q + b) * q + c) * q + d) = f(a, b, c, d);
  return v;
}

/// Identity on both replicas.
inline Vec circ(int q) {
  return make(q, [](int a, int b, int c, int d) { return cplx(a == b && c == d ? 1.0 : 0.0); });
}

/// Replica-exchange pairing I.
inline Vec pairing(int q) {
  return make(q, [](int a, int b, int c, int d) { return cplx(a == d && b == c ? 1.0 : 0.0); });
}

/// Pairing with an operator inserted on each replica strand, I^s.
inline Vec pairing_with(const Mat& s) {
  return make(static_cast<int>(s.rows()),
              [&](int a, int b, int c, int d) { return s(d, a) * s(b, c); });
}

/// Operator s1 on the first replica and s2 on the second.
inline Vec replicas(const Mat& s1, const Mat& s2) {
  return make(static_cast<int>(s1.rows()),
              [&](int a, int b, int c, int d) { return s1(a, b) * s2(c, d); });
}

inline Vec doubled(const Mat& s) { return replicas(s, s); }

}  // namespace legs

/// Product over legs, leg 1 first.
inline Vec product_state(LocalDim q, std::span<const Vec> leg_tensors) {
  const int qq = q.get();
  Vec v = Vec::Ones(1);
  Index d = 1;
  for (const Vec& f : leg_tensors) {
    if (f.size() != ipow(qq, 4)) throw Error("product_state: leg tensor has wrong size");
    const Index nd = d * qq;
    Vec w(nd * nd * nd * nd);
    for (Index a = 0; a < d; ++a)
      for (Index b = 0; b < d; ++b)
        for (Index c = 0; c < d; ++c)
          for (Index e = 0; e < d; ++e) {
            const cplx base = v(((a * d + b) * d + c) * d + e);
            for (int a2 = 0; a2 < qq; ++a2)
              for (int b2 = 0; b2 < qq; ++b2)
                for (int c2 = 0; c2 < qq; ++c2)
                  for (int e2 = 0; e2 < qq; ++e2) {
                    const Index idx = (((a * qq + a2) * nd + (b * qq + b2)) * nd + (c * qq + c2)) * nd +
                                      (e * qq + e2);
                    w(idx) = base * f(((a2 * qq + b2) * qq + c2) * qq + e2);
                  }
          }
    v = std::move(w);
    d = nd;
  }
  return v;
}

namespace detail {

using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// out (+)= k applied to copy `mode` of a d^4 tensor.
inline void mode_product(const Mat& k, const Vec& in, Vec& out, int mode, Index d, bool accumulate) {
  using Map = Eigen::Map<RowMat>;
  using CMap = Eigen::Map<const RowMat>;
  const Index d2 = d * d, d3 = d2 * d;
  auto run = [&](const cplx* src, cplx* dst, Index rows, Index cols, bool right) {
    CMap x(src, rows, cols);
    Map y(dst, rows, cols);
    if (right) {
      if (accumulate) y.noalias() += x * k.transpose();
      else y.noalias() = x * k.transpose();
    } else {
      if (accumulate) y.noalias() += k * x;
      else y.noalias() = k * x;
    }
  };
  switch (mode) {
    case 0:
      run(in.data(), out.data(), d, d3, false);
      break;
    case 1:
      for (Index a = 0; a < d; ++a) run(in.data() + a * d3, out.data() + a * d3, d, d2, false);
      break;
    case 2:
      for (Index ab = 0; ab < d2; ++ab) run(in.data() + ab * d2, out.data() + ab * d2, d, d, false);
      break;
    default:
      run(in.data(), out.data(), d3, d, true);
      break;
  }
}

}  // namespace detail

/// Column transfer operator of depth n, applied without materializing it.
///
/// Each copy of the column is a chain of n gates threaded by a horizontal
/// carry. With chain(x, y) the single-copy map for carry-in x and carry-out y,
///   T = (1/q) sum_{a,c,u,v} K(a,u) (x) conj K(a,v) (x) K(c,v) (x) conj K(c,u)
/// on copies (A, B, C, D): the carry enters as the identity on each replica
/// and leaves through the replica-exchange pairing.
class TransferOperator {
 public:
  TransferOperator(const Gate& gate, int n, TransferBudget budget = {})
      : gate_(gate), n_(n), budget_(budget) {
    if (n < 1) throw Error("transfer depth must be at least 1");
    if (transfer_dim(gate.dim(), n) > budget.vector_dim)
      throw BudgetError("transfer dimension " + std::to_string(transfer_dim(gate.dim(), n)) +
                        " exceeds the vector budget; use the oracle or closed forms");
    build_chains();
  }

  const Gate& gate() const { return gate_; }
  int depth() const { return n_; }
  LocalDim local_dim() const { return gate_.dim(); }
  Index copy_dim() const { return d_; }
  Index size() const { return d_ * d_ * d_ * d_; }
  const TransferBudget& budget() const { return budget_; }

  /// Single-copy chain with carry-in x and carry-out y.
  const Mat& chain(int x, int y) const { return k_[x * q() + y]; }

  /// T v.
  Vec apply(const Vec& v) const { return contract(v, k_, kc_); }

  /// T^T v, i.e. the row vector (v| T.
  Vec apply_left(const Vec& v) const { return contract(v, kt_, kct_); }

  /// Dense matrix, copy-major on both sides.
  Mat dense() const {
    if (size() > budget_.dense_dim)
      throw BudgetError("transfer dimension " + std::to_string(size()) +
                        " exceeds the dense budget");
    const int qq = q();
    Mat t = Mat::Zero(size(), size());
    for (int a = 0; a < qq; ++a)
      for (int c = 0; c < qq; ++c)
        for (int u = 0; u < qq; ++u)
          for (int w = 0; w < qq; ++w) {
            const Mat left = kron(chain(a, u), chain(a, w).conjugate());
            const Mat right = kron(chain(c, w), chain(c, u).conjugate());
            t += kron(left, right);
          }
    return t / double(qq);
  }

  /// Column with a general carry-in chi[a,b,c,d] on the bottom, the pairing
  /// on top, and the identity on every input leg.
  Vec column_on_identity(const Vec& carry_in) const {
    const int qq = q();
    if (carry_in.size() != ipow(qq, 4)) throw Error("carry tensor has wrong size");
    const Index d2 = d_ * d_;
    Vec out = Vec::Zero(d2 * d2);
    for (int a = 0; a < qq; ++a)
      for (int b = 0; b < qq; ++b)
        for (int c = 0; c < qq; ++c)
          for (int e = 0; e < qq; ++e) {
            const cplx w = carry_in(((a * qq + b) * qq + c) * qq + e);
            if (w == cplx(0.0)) continue;
            for (int u = 0; u < qq; ++u)
              for (int v = 0; v < qq; ++v) {
                const Vec left = vectorize(chain(a, u) * chain(b, v).adjoint());
                const Vec right = vectorize(chain(c, v) * chain(e, u).adjoint());
                Eigen::Map<detail::RowMat>(out.data(), d2, d2).noalias() +=
                    w * left * right.transpose();
              }
          }
    return out;
  }

 private:
  int q() const { return gate_.dim().get(); }

  void build_chains() {
    const int qq = q();
    d_ = ipow(qq, n_);
    k_.assign(qq * qq, Mat());
    for (int x = 0; x < qq; ++x) {
      // partial[c]: map from the first legs' inputs to outputs with carry c.
      std::vector<Mat> partial(qq, Mat::Zero(1, 1));
      partial[x](0, 0) = 1.0;
      for (int leg = 0; leg < n_; ++leg) {
        const Index s = partial[0].rows();
        std::vector<Mat> next(qq, Mat::Zero(s * qq, s * qq));
        for (int c = 0; c < qq; ++c)
          for (int c2 = 0; c2 < qq; ++c2)
            for (int o = 0; o < qq; ++o)
              for (int i = 0; i < qq; ++i) {
                const cplx amp = gate_(o, c2, c, i);
                if (amp == cplx(0.0)) continue;
                for (Index r = 0; r < s; ++r)
                  for (Index col = 0; col < s; ++col)
                    next[c2](r * qq + o, col * qq + i) += amp * partial[c](r, col);
              }
        partial = std::move(next);
      }
      for (int y = 0; y < qq; ++y) k_[x * qq + y] = std::move(partial[y]);
    }
    for (const Mat& k : k_) {
      kc_.push_back(k.conjugate());
      kt_.push_back(k.transpose());
      kct_.push_back(k.adjoint());
    }
  }

  Vec contract(const Vec& v, const std::vector<Mat>& k, const std::vector<Mat>& kc) const {
    if (v.size() != size()) throw Error("transfer apply: vector has wrong size");
    const int qq = q();
    const Index n = size();
    auto blk = [qq](const std::vector<Mat>& m, int x, int y) -> const Mat& { return m[x * qq + y]; };

    std::vector<Vec> stage1(qq * qq, Vec(n));  // [c][u]: copy D
    for (int c = 0; c < qq; ++c)
      for (int u = 0; u < qq; ++u) detail::mode_product(blk(kc, c, u), v, stage1[c * qq + u], 3, d_, false);

    std::vector<Vec> stage2(qq * qq, Vec(n));  // [u][w]: copy C, summed over c
    for (int u = 0; u < qq; ++u)
      for (int w = 0; w < qq; ++w)
        for (int c = 0; c < qq; ++c)
          detail::mode_product(blk(k, c, w), stage1[c * qq + u], stage2[u * qq + w], 2, d_, c > 0);
    stage1.clear();

    std::vector<Vec> stage3(qq * qq, Vec(n));  // [a][w]: copy A, summed over u
    for (int a = 0; a < qq; ++a)
      for (int w = 0; w < qq; ++w)
        for (int u = 0; u < qq; ++u)
          detail::mode_product(blk(k, a, u), stage2[u * qq + w], stage3[a * qq + w], 0, d_, u > 0);
    stage2.clear();

    Vec out(n);
    bool first = true;
    for (int a = 0; a < qq; ++a)
      for (int w = 0; w < qq; ++w) {
        detail::mode_product(blk(kc, a, w), stage3[a * qq + w], out, 1, d_, !first);
        first = false;
      }
    out /= double(qq);
    return out;
  }

  Gate gate_;
  int n_;
  TransferBudget budget_;
  Index d_ = 1;
  std::vector<Mat> k_, kc_, kt_, kct_;
};

using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

/// Two-site conjugation X -> U X U^dag in the orthonormal product basis
/// (s_m (x) s_n)/q of a Hermitian one-site basis; real for unitary U.
inline RMat conjugation_superoperator(const Gate& g, const OperatorBasis& basis) {
  const int qq = g.dim().get();
  const int b = basis.size();
  const Mat& u = g.matrix();
  RMat s(b * b, b * b);
  for (int n1 = 0; n1 < b; ++n1)
    for (int n2 = 0; n2 < b; ++n2) {
      const Mat image = u * kron(basis[n1], basis[n2]) * u.adjoint();
      for (int m1 = 0; m1 < b; ++m1)
        for (int m2 = 0; m2 < b; ++m2) {
          const cplx e = (kron(basis[m1], basis[m2]) * image).trace() / double(qq * qq);
          if (std::abs(e.imag()) > 1e-12) throw ConventionError("operator basis is not Hermitian");
          s(m1 * b + m2, n1 * b + n2) = e.real();
        }
    }
  return s;
}

namespace detail {

/// Applies m to mode `mode` of a row-major tensor with `modes` modes of size b.
inline Vec transform_mode(const Vec& v, const Mat& m, int mode, int modes, Index b) {
  const Index outer = ipow(b, mode);
  const Index inner = ipow(b, modes - 1 - mode);
  Vec out(v.size());
  for (Index o = 0; o < outer; ++o) {
    Eigen::Map<const RowMat> x(v.data() + o * b * inner, b, inner);
    Eigen::Map<RowMat>(out.data() + o * b * inner, b, inner).noalias() = m * x;
  }
  return out;
}

}  // namespace detail

/// Column transfer operator acting on real coefficient vectors.
///
/// Each leg pair of a replica is expanded in the Hermitian basis s_mu/sqrt(q),
/// which makes every folded gate real. The layout is
///   [mu_1 .. mu_n][mu'_n .. mu'_1]
/// (first replica legs 1..n, then second replica legs n..1), so the carry of
/// the first replica, threaded upward through its legs, meets the top leg of
/// the second replica and is threaded back down. With R(0, m) the one-replica
/// chain from carry-in identity to carry-out s_m,
///   T = sum_m R(0, m) (x) R(0, m).
class RealTransferOperator {
 public:
  RealTransferOperator(const Gate& gate, int n, TransferBudget budget = {})
      : gate_(gate), n_(n), basis_(pauli_basis(gate.dim())) {
    if (n < 1) throw Error("transfer depth must be at least 1");
    if (transfer_dim(gate.dim(), n) > budget.vector_dim)
      throw BudgetError("transfer dimension " + std::to_string(transfer_dim(gate.dim(), n)) +
                        " exceeds the vector budget; use the oracle or closed forms");
    const RMat s = conjugation_superoperator(gate, basis_);
    const int b = basis_.size();
    forward_ = s;
    reverse_.resize(b * b, b * b);
    forward_t_.resize(b * b, b * b);
    reverse_t_.resize(b * b, b * b);
    for (int o = 0; o < b; ++o)
      for (int c2 = 0; c2 < b; ++c2)
        for (int c = 0; c < b; ++c)
          for (int i = 0; i < b; ++i) {
            const double e = s(o * b + c2, c * b + i);
            reverse_(o * b + c, c2 * b + i) = e;
            forward_t_(i * b + c2, c * b + o) = e;
            reverse_t_(i * b + c, c2 * b + o) = e;
          }
  }

  int depth() const { return n_; }
  Index size() const { return transfer_dim(gate_.dim(), n_); }
  const OperatorBasis& basis() const { return basis_; }

  RVec apply(const RVec& x) const { return contract(x, forward_, reverse_); }
  RVec apply_left(const RVec& x) const { return contract(x, forward_t_, reverse_t_); }

  /// Coefficients of a copy-major right vector: x_mu = tr(s_mu X)/sqrt(q) per pair.
  Vec to_basis_right(const Vec& v) const { return convert(v, false); }

  /// Coefficients of a copy-major left vector, so that bilinear pairings are
  /// preserved: l_mu = sum L[A,B] s_mu[A,B]/sqrt(q) per pair.
  Vec to_basis_left(const Vec& v) const { return convert(v, true); }

 private:
  Vec convert(const Vec& v, bool left) const {
    const int qq = gate_.dim().get();
    const Index b = basis_.size();
    const Index d = ipow(qq, n_);
    if (v.size() != size()) throw Error("basis conversion: vector has wrong size");
    // Reorder copy-major (A, B, C, D) into pair-major [AB_1..AB_n][CD_n..CD_1].
    Vec pairs(v.size());
    std::vector<int> a(n_), bb(n_), c(n_), e(n_);
    for (Index idx = 0; idx < v.size(); ++idx) {
      Index rest = idx;
      Index ci[4];
      for (int k = 3; k >= 0; --k) {
        ci[k] = rest % d;
        rest /= d;
      }
      Index target = 0;
      for (int leg = 0; leg < n_; ++leg) {
        const Index stride = ipow(qq, n_ - 1 - leg);
        const Index ab = ((ci[0] / stride) % qq) * qq + (ci[1] / stride) % qq;
        target = target * b + ab;
      }
      for (int leg = n_ - 1; leg >= 0; --leg) {
        const Index stride = ipow(qq, n_ - 1 - leg);
        const Index cd = ((ci[2] / stride) % qq) * qq + (ci[3] / stride) % qq;
        target = target * b + cd;
      }
      pairs(target) = v(idx);
    }
    Mat m(b, b);
    for (int mu = 0; mu < b; ++mu)
      for (int x = 0; x < qq; ++x)
        for (int y = 0; y < qq; ++y) {
          const cplx s = basis_[mu](x, y) / std::sqrt(double(qq));
          m(mu, x * qq + y) = left ? s : std::conj(s);
        }
    for (int mode = 0; mode < 2 * n_; ++mode) pairs = detail::transform_mode(pairs, m, mode, 2 * n_, b);
    return pairs;
  }

  RVec contract(const RVec& x, const RMat& fwd, const RMat& rev) const {
    using RowR = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    if (x.size() != size()) throw Error("transfer apply: vector has wrong size");
    const Index b = basis_.size();
    const Index total = x.size();
    RVec z(total * b), w(total * b);
    // First replica, leg 1: the carry enters as the identity (index 0).
    Eigen::Map<RowR>(z.data(), b * b, total / b).noalias() =
        fwd.leftCols(b) * Eigen::Map<const RowR>(x.data(), b, total / b);
    for (int leg = 1; leg < n_; ++leg) {
      const Index outer = ipow(b, leg);
      const Index cols = total * b / (outer * b * b);
      for (Index o = 0; o < outer; ++o)
        Eigen::Map<RowR>(w.data() + o * b * b * cols, b * b, cols).noalias() =
            fwd * Eigen::Map<const RowR>(z.data() + o * b * b * cols, b * b, cols);
      z.swap(w);
    }
    // Second replica, leg n down to leg 1, contracting the carry on the way.
    for (int leg = 0; leg < n_; ++leg) {
      const Index outer = ipow(b, n_ + leg);
      const Index cols = total * b / (outer * b * b);
      for (Index o = 0; o < outer; ++o)
        Eigen::Map<RowR>(w.data() + o * b * b * cols, b * b, cols).noalias() =
            rev * Eigen::Map<const RowR>(z.data() + o * b * b * cols, b * b, cols);
      z.swap(w);
    }
    RVec y(total);
    for (Index i = 0; i < total; ++i) y(i) = z(i * b);
    return y;
  }

  Gate gate_;
  int n_;
  OperatorBasis basis_;
  RMat forward_, reverse_, forward_t_, reverse_t_;
};

/// Trivial right fixed point q^{-n/2} |identity on every leg).
inline Vec trivial_right(LocalDim q, int n) {
  std::vector<Vec> f(n, legs::circ(q.get()));
  return product_state(q, f) * std::pow(double(q.get()), -0.5 * n);
}

/// Trivial left fixed point q^{-n/2} (pairing on every leg|.
inline Vec trivial_left(LocalDim q, int n) {
  std::vector<Vec> f(n, legs::pairing(q.get()));
  return product_state(q, f) * std::pow(double(q.get()), -0.5 * n);
}

/// Materialized transfer matrix for small depths.
struct TransferMatrix {
  int n;
  Mat mat;
  Gate gate;
};

/// Residual max(|T R - R|, |L T - L|) of the trivial fixed points.
inline double fixed_point_residual(const TransferOperator& t) {
  const Vec r = trivial_right(t.local_dim(), t.depth());
  const Vec l = trivial_left(t.local_dim(), t.depth());
  return std::max((t.apply(r) - r).cwiseAbs().maxCoeff(), (t.apply_left(l) - l).cwiseAbs().maxCoeff());
}

inline TransferMatrix build_transfer(const Gate& g, int n, TransferBudget budget = {}) {
  if (transfer_dim(g.dim(), n) > budget.dense_dim)
    throw BudgetError("transfer dimension " + std::to_string(transfer_dim(g.dim(), n)) +
                      " exceeds the dense budget");
  const TransferOperator op(g, n, budget);
  TransferMatrix tm{n, op.dense(), g};
  const Vec r = trivial_right(g.dim(), n);
  const Vec l = trivial_left(g.dim(), n);
  const double res = std::max((tm.mat * r - r).cwiseAbs().maxCoeff(),
                              (tm.mat.transpose() * l - l).cwiseAbs().maxCoeff());
  if (res > 1e-10) throw ConventionError("transfer matrix violates its trivial fixed points");
  return tm;
}

struct BoundaryVector {
  int n;
  std::optional<Parity> parity;  // right boundaries only
  Vec vec;
  std::string provenance;
};

/// q^{-n/2} (I ... I I^a|, with the operator on the outermost leg n.
inline BoundaryVector boundary_left(const Mat& sa, int n) {
  const LocalDim q(static_cast<int>(sa.rows()));
  std::vector<Vec> f(n, legs::pairing(q.get()));
  f.back() = legs::pairing_with(sa);
  return {n, std::nullopt, product_state(q, f) * std::pow(double(q.get()), -0.5 * n), "left"};
}

/// Right boundary for even (x - t): q^{-n/2} |s s on leg 1, identity elsewhere).
/// For odd (x - t) the operator enters through the carry of one extra column.
inline BoundaryVector boundary_right(const TransferOperator& t, const Mat& sb, Parity parity) {
  const LocalDim q = t.local_dim();
  const int n = t.depth();
  const double norm = std::pow(double(q.get()), -0.5 * n);
  if (parity == Parity::even) {
    std::vector<Vec> f(n, legs::circ(q.get()));
    f.front() = legs::doubled(sb);
    return {n, parity, product_state(q, f) * norm, "right-even"};
  }
  return {n, parity, t.column_on_identity(legs::doubled(sb)) * (norm / q.get()), "right-odd"};
}

enum class Method { finite_transfer, longtime_projector, longtime_iterate, closed_form, oracle };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::finite_transfer:
      return "finite_transfer";
    case Method::longtime_projector:
      return "longtime_projector";
    case Method::longtime_iterate:
      return "longtime_iterate";
    case Method::closed_form:
      return "closed_form";
    case Method::oracle:
      return "oracle";
  }
  return "unknown";
}

struct OtocResult {
  std::optional<int> x;  // unset for long-time values
  std::optional<int> t;
  int t_minus_x = 0;
  Parity parity = Parity::even;
  double value = 0.0;
  double imag = 0.0;
  Method method = Method::finite_transfer;
  int iterations = 0;
  bool converged = true;
  double amplitude = 0.0;  // oscillation amplitude over the averaging window
};

/// Column depth and number of transfer steps for a point inside the cone.
struct ConeCoordinates {
  int depth;
  int steps;
  Parity parity;
};

inline ConeCoordinates cone_coordinates(int x, int t) {
  const Parity p = parity_of(x, t);
  if (p == Parity::even) return {(t - x + 2) / 2, (t + x) / 2, p};
  return {(t - x + 1) / 2, (t + x + 1) / 2 - 1, p};
}

/// (t - x) for the long-time limit at the given depth and parity.
inline int longtime_offset(int n, Parity p) { return p == Parity::even ? 2 * (n - 1) : 2 * n - 1; }

/// Finite-time OTOC on the right edge 0 <= x <= t.
inline OtocResult otoc_finite(const Gate& g, const Mat& sa, const Mat& sb, int x, int t,
                              TransferBudget budget = {}) {
  OtocResult res;
  res.x = x;
  res.t = t;
  res.t_minus_x = t - x;
  res.parity = parity_of(x, t);
  res.method = Method::finite_transfer;
  if (std::abs(x) > t) {
    res.value = 1.0;
    return res;
  }
  if (x < 0) throw Error("otoc_finite: only the right edge 0 <= x <= t is supported");
  const ConeCoordinates cc = cone_coordinates(x, t);
  const TransferOperator op(g, cc.depth, budget);
  Vec v = boundary_right(op, sb, cc.parity).vec;
  for (int s = 0; s < cc.steps; ++s) v = op.apply(v);
  const cplx c = bilinear(boundary_left(sa, cc.depth).vec, v);
  res.value = c.real();
  res.imag = c.imag();
  res.iterations = cc.steps;
  return res;
}

struct IterationOptions {
  double tol = 1e-12;  // agreement of successive extrapolated estimates
  int window = 64;
  int max_iterations = 20000;
  int consecutive = 2;       // successive agreeing estimates required for convergence
  double asymptotic = 1e-4;  // steps must be below this before extrapolating
  double ratio_tol = 1e-7;   // stability of the vector step ratio before a vector extrapolation
};

/// Long-time limit of (left| T^m |right) by iteration, with left and right
/// given as coefficient vectors of `op`.
///
/// When successive vector steps shrink by a stable positive ratio r, the
/// iterate is replaced by x + (x - x_prev) r/(1 - r). The correction lies in
/// the range of T - 1, so the limit is unchanged while the slow mode is
/// removed. The scalar limit is estimated by Aitken extrapolation of the
/// slowest remaining mode; falls back to the Cesaro mean over a trailing
/// window when the sequence keeps oscillating.
inline OtocResult iterate_longtime(const RealTransferOperator& op, const Vec& left, const Vec& right,
                                   Parity parity, IterationOptions opt = {}) {
  OtocResult res;
  res.parity = parity;
  res.t_minus_x = longtime_offset(op.depth(), parity);
  res.method = Method::longtime_iterate;
  const RVec lr = left.real(), li = left.imag();
  RVec xr = right.real(), xi = right.imag();
  // Hermitian operators give real coefficients up to rounding.
  const bool has_imag = xi.cwiseAbs().maxCoeff() > 1e-13 * std::max(1.0, xr.cwiseAbs().maxCoeff());
  if (!has_imag) xi.setZero();
  auto overlap = [&] {
    cplx s(lr.dot(xr), li.dot(xr));
    if (has_imag) s += cplx(-li.dot(xi), lr.dot(xi));
    return s;
  };
  cplx prev = overlap();
  cplx prev_step = 0.0, prev_estimate = prev;
  std::deque<cplx> window;
  int calm = 0;
  double prev_mean = INFINITY;
  RVec dr_prev, di_prev;
  double prev_ratio = NAN;
  for (int m = 1; m <= opt.max_iterations; ++m) {
    RVec nr = op.apply(xr);
    RVec ni = has_imag ? op.apply(xi) : RVec();
    RVec dr = nr - xr;
    RVec di = has_imag ? RVec(ni - xi) : RVec();
    xr = std::move(nr);
    if (has_imag) xi = std::move(ni);

    double ratio = NAN;
    if (dr_prev.size() > 0) {
      double num = dr.dot(dr_prev), den = dr_prev.squaredNorm();
      if (has_imag) {
        num += di.dot(di_prev);
        den += di_prev.squaredNorm();
      }
      if (den > 0.0) ratio = num / den;
    }
    const bool stable = ratio > 0.0 && ratio < 1.0 && std::abs(ratio - prev_ratio) < opt.ratio_tol;
    prev_ratio = ratio;
    if (stable) {
      const double c = ratio / (1.0 - ratio);
      xr += c * dr;
      if (has_imag) xi += c * di;
      dr_prev.resize(0);
      di_prev.resize(0);
      prev_ratio = NAN;
      prev = overlap();
      prev_step = 0.0;
      prev_estimate = prev;
      calm = 0;
      continue;
    }
    dr_prev = std::move(dr);
    if (has_imag) di_prev = std::move(di);

    const cplx s = overlap();
    const cplx step = s - prev;
    cplx estimate = s;
    if (std::abs(prev_step) > 0.0) {
      const cplx r = step / prev_step;
      if (std::abs(1.0 - r) > 1e-3) estimate = s + step * r / (1.0 - r);
    }
    const bool settled = std::abs(step) < opt.asymptotic && std::abs(estimate - prev_estimate) < opt.tol;
    calm = settled ? calm + 1 : 0;
    prev = s;
    prev_step = step;
    prev_estimate = estimate;
    window.push_back(s);
    if (static_cast<int>(window.size()) > opt.window) window.pop_front();
    if (calm >= opt.consecutive) {
      res.value = estimate.real();
      res.imag = estimate.imag();
      res.amplitude = 0.0;
      res.iterations = m;
      return res;
    }
    if (m % opt.window == 0) {
      cplx mean = 0.0;
      double lo = INFINITY, hi = -INFINITY;
      for (cplx w : window) {
        mean += w;
        lo = std::min(lo, w.real());
        hi = std::max(hi, w.real());
      }
      mean /= double(window.size());
      res.value = mean.real();
      res.imag = mean.imag();
      res.amplitude = 0.5 * (hi - lo);
      res.iterations = m;
      if (std::abs(mean.real() - prev_mean) < opt.tol) return res;
      prev_mean = mean.real();
    }
  }
  res.converged = false;
  return res;
}

/// lim_m (L(sa)| T_n^m |R(sb)) for the given parity of (x - t).
inline OtocResult otoc_longtime(const Gate& g, const Mat& sa, const Mat& sb, int n, Parity parity,
                                TransferBudget budget = {}, IterationOptions opt = {}) {
  const TransferOperator op(g, n, budget);
  const RealTransferOperator rop(g, n, budget);
  const Vec left = rop.to_basis_left(boundary_left(sa, n).vec);
  const Vec right = rop.to_basis_right(boundary_right(op, sb, parity).vec);
  return iterate_longtime(rop, left, right, parity, opt);
}

}  // namespace mvc

#endif  // MVC_TRANSFER_HPP
