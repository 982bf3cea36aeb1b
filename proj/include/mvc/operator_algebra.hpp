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

#ifndef MVC_OPERATOR_ALGEBRA_HPP
#define MVC_OPERATOR_ALGEBRA_HPP

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mvc {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a requested dimension exceeds the configured memory budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Raised when an index or labeling convention cannot be satisfied.
class ConventionError : public Error {
 public:
  using Error::Error;
};

/// Admission tolerance for unitarity of gates.
inline constexpr double kUnitTol = 1e-10;

/// Local Hilbert-space dimension.
class LocalDim {
 public:
  explicit constexpr LocalDim(int q) : q_(q) {
    if (q < 2) throw Error("local dimension must be at least 2");
  }
  constexpr int get() const { return q_; }
  constexpr int squared() const { return q_ * q_; }
  friend constexpr bool operator==(LocalDim, LocalDim) = default;

 private:
  int q_;
};

/// Integer power for small non-negative exponents.
inline std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

/// Kronecker product a (x) b, with a on the slower index.
inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Largest absolute entry.
inline double max_abs(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Max-norm deviation of u from being unitary.
inline double unitarity_defect(const Mat& u) {
  if (u.rows() != u.cols()) return INFINITY;
  return max_abs(u.adjoint() * u - Mat::Identity(u.rows(), u.cols()));
}

/// Bilinear (non-conjugating) pairing used for all boundary overlaps.
inline cplx bilinear(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error("bilinear: size mismatch");
  return (a.transpose() * b)(0, 0);
}

namespace pauli {

inline Mat identity() { return Mat::Identity(2, 2); }
inline Mat x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Mat y() {
  Mat m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}
inline Mat z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace pauli

/// Orthonormal one-site operator basis with ops[0] the identity.
class OperatorBasis {
 public:
  OperatorBasis(LocalDim q, std::vector<Mat> ops) : q_(q), ops_(std::move(ops)) {
    const int n = q.get();
    if (static_cast<int>(ops_.size()) != n * n)
      throw Error("operator basis must hold q^2 operators");
    for (const auto& op : ops_)
      if (op.rows() != n || op.cols() != n) throw Error("basis operator has wrong shape");
    for (int a = 0; a < n * n; ++a)
      for (int b = 0; b < n * n; ++b) {
        const cplx g = (ops_[a].adjoint() * ops_[b]).trace() / double(n);
        if (std::abs(g - (a == b ? 1.0 : 0.0)) > 1e-12)
          throw Error("operator basis is not orthonormal");
      }
    if (max_abs(ops_[0] - Mat::Identity(n, n)) > 1e-14)
      throw Error("operator basis must start with the identity");
  }

  LocalDim dim() const { return q_; }
  int size() const { return static_cast<int>(ops_.size()); }
  const Mat& operator[](int i) const { return ops_.at(i); }
  std::span<const Mat> ops() const { return ops_; }

 private:
  LocalDim q_;
  std::vector<Mat> ops_;
};

/// Generalized Gell-Mann basis scaled to tr(s^dag s)/q = 1.
inline OperatorBasis gell_mann_basis(LocalDim q) {
  const int n = q.get();
  const double scale = std::sqrt(n / 2.0);
  std::vector<Mat> ops;
  ops.push_back(Mat::Identity(n, n));
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      Mat s = Mat::Zero(n, n);
      s(j, k) = s(k, j) = 1.0;
      ops.push_back(scale * s);
      Mat a = Mat::Zero(n, n);
      a(j, k) = -kI;
      a(k, j) = kI;
      ops.push_back(scale * a);
    }
  for (int l = 1; l < n; ++l) {
    Mat d = Mat::Zero(n, n);
    const double c = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) d(j, j) = c;
    d(l, l) = -c * l;
    ops.push_back(scale * d);
  }
  return OperatorBasis(q, std::move(ops));
}

/// Pauli basis (1, X, Y, Z) for q = 2; Gell-Mann basis otherwise.
inline OperatorBasis pauli_basis(LocalDim q) {
  if (q.get() == 2)
    return OperatorBasis(q, {pauli::identity(), pauli::x(), pauli::y(), pauli::z()});
  return gell_mann_basis(q);
}

/// Coefficients c[a] = tr(ops[a]^dag s)/q.
inline Vec op_to_vec(const Mat& s, const OperatorBasis& basis) {
  const int n = basis.dim().get();
  if (s.rows() != n || s.cols() != n) throw Error("op_to_vec: dimension mismatch");
  Vec c(basis.size());
  for (int a = 0; a < basis.size(); ++a) c(a) = (basis[a].adjoint() * s).trace() / double(n);
  return c;
}

inline Mat vec_to_op(const Vec& c, const OperatorBasis& basis) {
  if (c.size() != basis.size()) throw Error("vec_to_op: dimension mismatch");
  const int n = basis.dim().get();
  Mat s = Mat::Zero(n, n);
  for (int a = 0; a < basis.size(); ++a) s += c(a) * basis[a];
  return s;
}

/// Traceless qubit operator a_x X + a_y Y + a_z Z.
struct PauliCoeffs {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  PauliCoeffs normalized() const {
    const double r = norm();
    if (r == 0.0) throw Error("cannot normalize a zero operator");
    return {x / r, y / r, z / r};
  }
  Mat matrix() const { return x * pauli::x() + y * pauli::y() + z * pauli::z(); }
  double dot(const PauliCoeffs& o) const { return x * o.x + y * o.y + z * o.z; }
};

/// A two-site unitary. Element (a*q+b, c*q+d) maps input (c,d) to output
/// (a,b); the left site is the slower index.
class Gate {
 public:
  Gate(LocalDim q, Mat u, std::string label = "custom")
      : q_(q), u_(std::move(u)), label_(std::move(label)) {
    const Index d = q.squared();
    if (u_.rows() != d || u_.cols() != d) throw Error("gate must be q^2 x q^2");
    if (unitarity_defect(u_) >= kUnitTol) throw Error("gate is not unitary");
  }

  LocalDim dim() const { return q_; }
  const Mat& matrix() const { return u_; }
  cplx operator()(int a, int b, int c, int d) const {
    const int q = q_.get();
    return u_(a * q + b, c * q + d);
  }
  const std::string& label() const { return label_; }

 private:
  LocalDim q_;
  Mat u_;
  std::string label_;
};

/// Folded gate: w_plus = vec(U . U^dag), w_minus = vec(U^dag . U), row-major.
struct FoldedGate {
  Mat w_plus;
  Mat w_minus;
};

/// Row-major vectorization: element (i,j) -> i*cols + j.
inline Vec vectorize(const Mat& m) {
  Vec v(m.size());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

inline Mat unvectorize(const Vec& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw Error("unvectorize: size mismatch");
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
  return m;
}

inline FoldedGate fold(const Gate& g) {
  const Mat& u = g.matrix();
  return {kron(u, u.conjugate()), kron(u.adjoint(), u.transpose())};
}

/// Space-direction reshuffle: out(a,b,c,d) = U(d,b,c,a). Pure permutation.
inline Mat dual(const Mat& u) {
  const auto q = static_cast<int>(std::lround(std::sqrt(double(u.rows()))));
  if (q * q != u.rows() || u.rows() != u.cols()) throw Error("dual: not a two-site matrix");
  Mat out(u.rows(), u.cols());
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int c = 0; c < q; ++c)
        for (int d = 0; d < q; ++d) out(a * q + b, c * q + d) = u(d * q + b, c * q + a);
  return out;
}

inline Mat dual(const Gate& g) { return dual(g.matrix()); }

/// Partial trace over the left site of a two-site operator.
inline Mat trace_left(const Mat& x, int q) {
  Mat out = Mat::Zero(q, q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int b2 = 0; b2 < q; ++b2) out(b, b2) += x(a * q + b, a * q + b2);
  return out;
}

/// Partial trace over the right site of a two-site operator.
inline Mat trace_right(const Mat& x, int q) {
  Mat out = Mat::Zero(q, q);
  for (int a = 0; a < q; ++a)
    for (int a2 = 0; a2 < q; ++a2)
      for (int b = 0; b < q; ++b) out(a, a2) += x(a * q + b, a2 * q + b);
  return out;
}

}  // namespace mvc

#endif  // MVC_OPERATOR_ALGEBRA_HPP
