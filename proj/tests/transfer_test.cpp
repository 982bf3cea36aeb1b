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

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace mvc {
namespace {

using testing::family_gates;

Vec random_vec(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(n);
  for (Index i = 0; i < n; ++i) v(i) = cplx(g(rng), g(rng));
  return v;
}

TEST(TransferTest, DenseMatchesIndexSums) {
  for (const Gate& g : {random_dual_unitary(11), random_kak(21)}) {
    for (int n = 1; n <= 2; ++n)
      EXPECT_LT(max_abs(TransferOperator(g, n).dense() - testing::naive_transfer(g, n)), 1e-12)
          << g.label() << " n=" << n;
  }
}

TEST(TransferTest, ApplyMatchesDense) {
  std::mt19937_64 rng(14);
  for (const Gate& g : family_gates()) {
    for (int n = 1; n <= 2; ++n) {
      const TransferOperator op(g, n);
      const Mat t = op.dense();
      const Vec v = random_vec(op.size(), rng);
      EXPECT_LT((op.apply(v) - t * v).cwiseAbs().maxCoeff(), 1e-11) << g.label();
      EXPECT_LT((op.apply_left(v) - t.transpose() * v).cwiseAbs().maxCoeff(), 1e-11) << g.label();
    }
  }
}

TEST(TransferTest, TrivialFixedPoints) {
  for (const Gate& g : family_gates())
    for (int n = 1; n <= 3; ++n) EXPECT_LT(fixed_point_residual(TransferOperator(g, n)), 1e-10) << g.label();
}

TEST(TransferTest, IdentityBoundariesReduceToFixedPoints) {
  const Gate g = build_kim({0.4, 0.6});
  for (int n = 1; n <= 3; ++n) {
    const TransferOperator op(g, n);
    EXPECT_LT((boundary_left(pauli::identity(), n).vec - trivial_left(LocalDim(2), n)).cwiseAbs().maxCoeff(),
              1e-15);
    EXPECT_LT((boundary_right(op, pauli::identity(), Parity::even).vec - trivial_right(LocalDim(2), n))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-15);
    EXPECT_LT((boundary_right(op, pauli::identity(), Parity::odd).vec - trivial_right(LocalDim(2), n))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-12);
  }
}

TEST(TransferTest, DualUnitaryEStatesAreEigenvectors) {
  const Gate g = random_dual_unitary(12);
  for (int n = 1; n <= 3; ++n) {
    const TransferOperator op(g, n);
    for (int k = 0; k <= n; ++k) {
      const Vec e = e_state(LocalDim(2), n, k);
      EXPECT_LT(eigen_residual(op, e, 1.0), 1e-10) << "n=" << n << " k=" << k;
      EXPECT_LT(eigen_residual(op, e, 1.0, true), 1e-10) << "n=" << n << " k=" << k;
    }
  }
}

TEST(TransferTest, BudgetErrors) {
  const Gate g = build_kim({0.4, 0.6});
  EXPECT_THROW(TransferOperator(g, 6), BudgetError);
  EXPECT_THROW(build_transfer(g, 4), BudgetError);
  EXPECT_THROW(TransferOperator(g, 0), Error);
  EXPECT_NO_THROW(build_transfer(g, 2));
}

TEST(TransferTest, RealOperatorMatchesComplex) {
  std::mt19937_64 rng(15);
  for (const Gate& g : {random_dual_unitary(13), build_kim({0.4, 0.6}), build_xy({kPi / 10}), random_kak(22)}) {
    for (int n = 1; n <= 3; ++n) {
      const TransferOperator op(g, n);
      const RealTransferOperator rop(g, n);
      const Mat sa = testing::random_direction(rng).matrix(), sb = testing::random_direction(rng).matrix();
      const Vec left = boundary_left(sa, n).vec;
      Vec right = boundary_right(op, sb, Parity::odd).vec;
      const Vec lc = rop.to_basis_left(left);
      const Vec rc = rop.to_basis_right(right);
      EXPECT_LT(std::abs(bilinear(left, right) - bilinear(lc, rc)), 1e-12);
      EXPECT_LT(rc.imag().cwiseAbs().maxCoeff(), 1e-12);
      RVec x = rc.real();
      for (int m = 0; m < 4; ++m) {
        right = op.apply(right);
        x = rop.apply(x);
        EXPECT_LT(std::abs(bilinear(left, right) - lc.real().dot(x)), 1e-11) << g.label() << " n=" << n;
      }
    }
  }
}

TEST(ConeCoordinatesTest, DepthAndSteps) {
  const ConeCoordinates even = cone_coordinates(1, 3);
  EXPECT_EQ(even.depth, 2);
  EXPECT_EQ(even.steps, 2);
  EXPECT_EQ(even.parity, Parity::even);
  const ConeCoordinates odd = cone_coordinates(1, 4);
  EXPECT_EQ(odd.depth, 2);
  EXPECT_EQ(odd.steps, 2);
  EXPECT_EQ(odd.parity, Parity::odd);
  EXPECT_EQ(longtime_offset(1, Parity::even), 0);
  EXPECT_EQ(longtime_offset(3, Parity::odd), 5);
}

TEST(OtocFiniteTest, OutsideConeIsOne) {
  const Gate g = random_kak(21);
  EXPECT_EQ(otoc_finite(g, pauli::x(), pauli::z(), 4, 3).value, 1.0);
  EXPECT_THROW(otoc_finite(g, pauli::x(), pauli::z(), -1, 3), Error);
}

TEST(OtocFiniteTest, MatchesOracle) {
  std::mt19937_64 rng(16);
  for (const Gate& g : family_gates()) {
    const ChainSpec spec(g, 8);
    const Mat sa = testing::random_direction(rng).matrix(), sb = testing::random_direction(rng).matrix();
    for (int t = 0; t <= 3; ++t)
      for (int x = 0; x <= t; ++x) {
        const OtocResult r = otoc_finite(g, sa, sb, x, t);
        EXPECT_NEAR(r.value, oracle_otoc(spec, sa, sb, x, t).real(), 1e-10) << g.label() << " x=" << x << " t=" << t;
        EXPECT_NEAR(r.imag, 0.0, 1e-10);
      }
  }
}

TEST(OtocLongtimeTest, GenericGateGivesOne) {
  for (std::uint64_t seed = 30; seed < 33; ++seed) {
    const OtocResult r = otoc_longtime(random_kak(seed), pauli::x(), pauli::z(), 1, Parity::even);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, 1.0, 1e-8);
  }
}

TEST(OtocLongtimeTest, IterationAgreesWithProjector) {
  const PauliCoeffs a = PauliCoeffs{1.0, 0.0, 1.0}.normalized(), b{0.0, 1.0, 0.0};
  const Gate g = build_kim({0.4, 0.6});
  for (int n = 1; n <= 3; ++n)
    for (Parity p : {Parity::even, Parity::odd}) {
      const OtocResult it = otoc_longtime(g, a.matrix(), b.matrix(), n, p);
      const OtocResult pr = otoc_longtime_projector(g, a.matrix(), b.matrix(), n, p, EigenFamily::kicked_ising);
      EXPECT_TRUE(it.converged);
      EXPECT_NEAR(it.value, pr.value, 1e-10) << "n=" << n;
    }
}

TEST(IterateLongtimeTest, SlowModeIsExtrapolatedAway) {
  // This gate's T_2 has a real eigenvalue of about 0.99985 below the unit ones.
  const OtocResult r = otoc_longtime(random_dual_unitary(1), pauli::x(), pauli::x(), 2, Parity::even);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 0.0, 1e-8);
  EXPECT_LT(r.iterations, 20000);
}

TEST(IterateLongtimeTest, KickedXyOddParityMatchesTable) {
  const Gate g = build_xy({kPi / 10});
  const RealTransferOperator rop(g, 1);
  const TransferOperator op(g, 1);
  const Mat sa = pauli::z(), sb = pauli::y();
  const Vec left = rop.to_basis_left(boundary_left(sa, 1).vec);
  const Vec right = rop.to_basis_right(boundary_right(op, sb, Parity::odd).vec);
  const OtocResult r = iterate_longtime(rop, left, right, Parity::odd);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, xy_longtime({0, 0, 1}, {0, 1, 0}, 1), 1e-8);
}

}  // namespace
}  // namespace mvc
