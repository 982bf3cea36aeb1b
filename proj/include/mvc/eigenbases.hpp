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

#ifndef MVC_EIGENBASES_HPP
#define MVC_EIGENBASES_HPP

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mvc/transfer.hpp"

namespace mvc {

enum class StateKind { e_k, z_k, xy_right, xy_left, boundary };

inline std::string_view to_string(StateKind k) {
  switch (k) {
    case StateKind::e_k:
      return "e_k";
    case StateKind::z_k:
      return "z_k";
    case StateKind::xy_right:
      return "xy_right";
    case StateKind::xy_left:
      return "xy_left";
    case StateKind::boundary:
      return "boundary";
  }
  return "unknown";
}

using Bits = std::vector<int>;
using StateLabel = std::variant<int, Bits>;

/// Symbolic column state, materialized on first use. Copies share the
/// materialized vector; concurrent readers build it once.
class LabeledState {
 public:
  LabeledState(int n, StateKind kind, StateLabel label, std::function<Vec()> build)
      : n_(n), kind_(kind), label_(std::move(label)), cache_(std::make_shared<Cache>()) {
    cache_->build = std::move(build);
  }

  int depth() const { return n_; }
  StateKind kind() const { return kind_; }
  const StateLabel& label() const { return label_; }

  const Vec& vec() const {
    std::call_once(cache_->once, [this] {
      cache_->vec = cache_->build();
      cache_->build = nullptr;
    });
    return cache_->vec;
  }

 private:
  struct Cache {
    std::once_flag once;
    std::function<Vec()> build;
    Vec vec;
  };
  int n_;
  StateKind kind_;
  StateLabel label_;
  std::shared_ptr<Cache> cache_;
};

/// max |T v - lambda v|, or of the row action (v| T when `left` is set.
inline double eigen_residual(const TransferOperator& t, const Vec& v, cplx lambda, bool left = false) {
  const Vec tv = left ? t.apply_left(v) : t.apply(v);
  return (tv - lambda * v).cwiseAbs().maxCoeff();
}

/// Identity on legs 1..n-k, pairing on the top k legs.
inline Vec e_state(LocalDim q, int n, int k) {
  if (k < 0 || k > n) throw Error("e_state: k out of range");
  std::vector<Vec> f(n, legs::circ(q.get()));
  for (int leg = n - k; leg < n; ++leg) f[leg] = legs::pairing(q.get());
  return product_state(q, f);
}

/// Orthonormal combination of the e states.
inline Vec e_tilde(LocalDim q, int n, int k) {
  const double qq = q.get();
  const double scale = std::pow(qq, -n);
  if (k == 0) return scale * e_state(q, n, 0);
  return scale * (qq * e_state(q, n, k) - e_state(q, n, k - 1)) / std::sqrt(qq * qq - 1.0);
}

struct EBasis {
  std::vector<LabeledState> e;
  std::vector<LabeledState> e_tilde;
};

inline EBasis e_basis(LocalDim q, int n) {
  if (n < 1) throw Error("e_basis: n must be at least 1");
  EBasis b;
  for (int k = 0; k <= n; ++k) {
    b.e.emplace_back(n, StateKind::e_k, k, [=] { return e_state(q, n, k); });
    b.e_tilde.emplace_back(n, StateKind::e_k, k, [=] { return e_tilde(q, n, k); });
  }
  return b;
}

/// Identity below leg n-k+1, Z on both replicas of leg n-k+1, pairing above.
inline Vec z_state(int n, int k) {
  if (k < 1 || k > n) throw Error("z_state: k out of range");
  const LocalDim q(2);
  std::vector<Vec> f(n, legs::circ(2));
  f[n - k] = legs::doubled(pauli::z());
  for (int leg = n - k + 1; leg < n; ++leg) f[leg] = legs::pairing(2);
  return product_state(q, f);
}

/// Orthonormal completion of the e basis by the z states (index n + k).
inline Vec z_tilde(int n, int k) {
  const LocalDim q(2);
  return std::pow(2.0, -n) * (std::sqrt(1.5) * z_state(n, k) - std::sqrt(2.0 / 3.0) * e_state(q, n, k) +
                              std::sqrt(1.0 / 6.0) * e_state(q, n, k - 1));
}

struct ZBasis {
  std::vector<LabeledState> z;        // k = 1..n
  std::vector<LabeledState> z_tilde;  // e-tilde indices n+1..2n
};

inline ZBasis kim_z_basis(int n) {
  if (n < 1) throw Error("kim_z_basis: n must be at least 1");
  ZBasis b;
  for (int k = 1; k <= n; ++k) {
    b.z.emplace_back(n, StateKind::z_k, k, [=] { return z_state(n, k); });
    b.z_tilde.emplace_back(n, StateKind::z_k, n + k, [=] { return z_tilde(n, k); });
  }
  return b;
}

/// Slot operator of the XY product states: (0,0)->1, (0,1)->Y, (1,0)->Z, (1,1)->X.
inline Mat xy_slot_operator(int prev, int cur) {
  if (prev == 0 && cur == 0) return pauli::identity();
  if (prev == 0) return pauli::y();
  if (cur == 0) return pauli::z();
  return pauli::x();
}

namespace detail {

inline void check_bits(const Bits& b) {
  if (b.empty()) throw Error("bitstring must be non-empty");
  for (int v : b)
    if (v != 0 && v != 1) throw Error("bitstring entries must be 0 or 1");
}

}  // namespace detail

/// Right product state: leg i carries s(r_{i-1}, r_i) on both replicas, r_0 = 0.
inline Vec xy_right_vec(const Bits& r) {
  detail::check_bits(r);
  const int n = static_cast<int>(r.size());
  std::vector<Vec> f;
  for (int i = 0; i < n; ++i) f.push_back(legs::doubled(xy_slot_operator(i == 0 ? 0 : r[i - 1], r[i])));
  return product_state(LocalDim(2), f);
}

/// Left product state: leg j carries the pairing with s(l_{n+1-j}, l_{n-j}), l_0 = 0.
inline Vec xy_left_vec(const Bits& l) {
  detail::check_bits(l);
  const int n = static_cast<int>(l.size());
  auto bit = [&](int i) { return i == 0 ? 0 : l[i - 1]; };
  std::vector<Vec> f;
  for (int j = 1; j <= n; ++j) f.push_back(legs::pairing_with(xy_slot_operator(bit(n + 1 - j), bit(n - j))));
  return product_state(LocalDim(2), f);
}

inline LabeledState xy_right_state(const Bits& r) {
  return LabeledState(static_cast<int>(r.size()), StateKind::xy_right, r, [r] { return xy_right_vec(r); });
}

inline LabeledState xy_left_state(const Bits& l) {
  return LabeledState(static_cast<int>(l.size()), StateKind::xy_left, l, [l] { return xy_left_vec(l); });
}

/// ({l}|{r}) as the product of per-leg traces 2 (-1)^{r_{i-1} l_{n-i} + r_i l_{n-i+1}}.
inline long long xy_overlap(const Bits& l, const Bits& r) {
  detail::check_bits(l);
  detail::check_bits(r);
  if (l.size() != r.size()) throw Error("xy_overlap: length mismatch");
  const int n = static_cast<int>(r.size());
  auto rb = [&](int i) { return i == 0 ? 0 : r[i - 1]; };
  auto lb = [&](int i) { return i == 0 ? 0 : l[i - 1]; };
  int sign = 0;
  for (int i = 1; i <= n; ++i) sign += rb(i - 1) * lb(n - i) + rb(i) * lb(n - i + 1);
  return (sign % 2 == 0 ? 1LL : -1LL) << n;
}

/// All 2^n bitstrings of length n, in counting order with bit 1 most significant.
inline std::vector<Bits> all_bitstrings(int n) {
  std::vector<Bits> out;
  for (long long m = 0; m < (1LL << n); ++m) {
    Bits b(n);
    for (int i = 0; i < n; ++i) b[i] = static_cast<int>((m >> (n - 1 - i)) & 1);
    out.push_back(std::move(b));
  }
  return out;
}

/// 2^n x 2^n overlap matrix G(l, r).
inline Eigen::MatrixXd xy_overlap_matrix(int n) {
  const auto labels = all_bitstrings(n);
  const auto m = static_cast<Index>(labels.size());
  Eigen::MatrixXd g(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) g(i, j) = static_cast<double>(xy_overlap(labels[i], labels[j]));
  return g;
}

struct XyDualBasis {
  std::vector<Bits> labels;
  std::vector<LabeledState> right;  // |R({l})) = 2^{-2n} sum_r |{r}) ({l}|{r})
  std::vector<LabeledState> left;   // (L({l})| = 2^{-n} ({l}|
};

inline XyDualBasis xy_dual_basis(int n) {
  if (n < 1) throw Error("xy_dual_basis: n must be at least 1");
  XyDualBasis b;
  b.labels = all_bitstrings(n);
  for (const Bits& l : b.labels) {
    b.right.emplace_back(n, StateKind::xy_right, l, [l, n] {
      Vec v = Vec::Zero(transfer_dim(LocalDim(2), n));
      for (const Bits& r : all_bitstrings(n)) v += double(xy_overlap(l, r)) * xy_right_vec(r);
      return Vec(v * std::pow(2.0, -2 * n));
    });
    b.left.emplace_back(n, StateKind::xy_left, l, [l, n] { return Vec(xy_left_vec(l) * std::pow(2.0, -n)); });
  }
  return b;
}

/// Operator s1 on replica 1 of each leg j and s_{2n+1-j} on replica 2.
inline Vec slot_product_state(std::span<const Mat> slots) {
  const int total = static_cast<int>(slots.size());
  if (total == 0 || total % 2 != 0) throw Error("slot_product_state: need 2n slot operators");
  const int n = total / 2;
  const LocalDim q(static_cast<int>(slots[0].rows()));
  std::vector<Vec> f;
  for (int j = 0; j < n; ++j) f.push_back(legs::replicas(slots[j], slots[total - 1 - j]));
  return product_state(q, f);
}

enum class EigenFamily { generic, dual_unitary, kicked_ising, kicked_xy, integrable_kim };

inline std::string_view to_string(EigenFamily f) {
  switch (f) {
    case EigenFamily::generic:
      return "generic";
    case EigenFamily::dual_unitary:
      return "dual_unitary";
    case EigenFamily::kicked_ising:
      return "kicked_ising";
    case EigenFamily::kicked_xy:
      return "kicked_xy";
    case EigenFamily::integrable_kim:
      return "integrable_kim";
  }
  return "unknown";
}

/// Long-time OTOC from the unit-eigenvalue eigenoperators of the family:
/// sum_k (L(sa)|R_k)(L_k|R(sb)) over a biorthonormal set.
inline OtocResult otoc_longtime_projector(const Gate& g, const Mat& sa, const Mat& sb, int n, Parity parity,
                                          EigenFamily family, TransferBudget budget = {}) {
  const TransferOperator op(g, n, budget);
  const Vec left = boundary_left(sa, n).vec;
  const Vec right = boundary_right(op, sb, parity).vec;
  const LocalDim q = g.dim();
  cplx value = 0.0;
  switch (family) {
    case EigenFamily::generic:
      value = bilinear(left, trivial_right(q, n)) * bilinear(trivial_left(q, n), right);
      break;
    case EigenFamily::kicked_ising:
      for (int k = 1; k <= n; ++k) {
        const Vec z = z_tilde(n, k);
        value += bilinear(left, z) * bilinear(z, right);
      }
      [[fallthrough]];
    case EigenFamily::dual_unitary:
      for (int k = 0; k <= n; ++k) {
        const Vec e = e_tilde(q, n, k);
        value += bilinear(left, e) * bilinear(e, right);
      }
      break;
    case EigenFamily::kicked_xy: {
      const auto labels = all_bitstrings(n);
      std::vector<cplx> left_r, l_right;
      for (const Bits& b : labels) {
        left_r.push_back(bilinear(left, xy_right_vec(b)));
        l_right.push_back(bilinear(xy_left_vec(b), right));
      }
      const double scale = std::pow(2.0, -3 * n);
      for (std::size_t il = 0; il < labels.size(); ++il) {
        cplx lr = 0.0;
        for (std::size_t ir = 0; ir < labels.size(); ++ir)
          lr += double(xy_overlap(labels[il], labels[ir])) * left_r[ir];
        value += scale * lr * l_right[il];
      }
      break;
    }
    case EigenFamily::integrable_kim:
      value = bilinear(left, op.apply(right));
      break;
  }
  OtocResult res;
  res.parity = parity;
  res.t_minus_x = longtime_offset(n, parity);
  res.method = Method::longtime_projector;
  res.value = value.real();
  res.imag = value.imag();
  return res;
}

}  // namespace mvc

#endif  // MVC_EIGENBASES_HPP
