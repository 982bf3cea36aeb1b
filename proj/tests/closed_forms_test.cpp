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

const PauliCoeffs kDiag = PauliCoeffs{1.0, 0.0, 1.0}.normalized();
const PauliCoeffs kY{0.0, 1.0, 0.0};

TEST(McLongtimeTest, OnConeAndEvenOffsets) {
  auto m = [](int) { return 0.5; };
  EXPECT_DOUBLE_EQ(mc_longtime(2, 0, m), -1.0 / 3.0);
  EXPECT_DOUBLE_EQ(mc_longtime(2, 2, m), 0.0);
  EXPECT_DOUBLE_EQ(mc_longtime(3, 0, m), -1.0 / 8.0);
  EXPECT_THROW(mc_longtime(2, -1, m), Error);
}

TEST(McLongtimeTest, OddOffsetsMatchIteration) {
  const Gate g = random_dual_unitary(13);
  const Mat sb = pauli::z();
  for (int n = 1; n <= 3; ++n) {
    const OtocResult it = otoc_longtime(g, pauli::x(), sb, n, Parity::odd);
    EXPECT_NEAR(mc_longtime(2, 2 * n - 1, [&](int k) { return m_n(g, sb, k); }), it.value, 1e-8) << n;
  }
}

TEST(KimLongtimeTest, FigureValues) {
  EXPECT_NEAR(kim_longtime(0.4, 0.6, kDiag, kY, 0), -0.5, 1e-15);
  EXPECT_DOUBLE_EQ(kim_longtime(0.4, 0.6, kDiag, kY, 2), 0.0);
  EXPECT_NEAR(kim_longtime(0.4, 0.6, kDiag, kY, 1), 1.5 * std::pow(std::sin(0.4), 2) - 0.5, 1e-15);
}

TEST(KimLongtimeTest, DecaysAsSquaredCosine) {
  const double c = std::cos(1.0);
  for (int tx = 3; tx <= 9; tx += 2)
    EXPECT_NEAR(kim_longtime(0.4, 0.6, kDiag, kY, tx + 2) / kim_longtime(0.4, 0.6, kDiag, kY, tx), c * c, 1e-12);
}

TEST(KimCorrelatorTest, MatchesChannelIteration) {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 5; ++trial) {
    const PauliCoeffs a = testing::random_direction(rng), b = testing::random_direction(rng);
    const Gate g = build_kim({0.4, 0.6});
    for (int t = 0; t <= 10; ++t)
      EXPECT_NEAR(lightcone_correlator(g, a.matrix(), b.matrix(), t).real(), kim_correlator(0.4, 0.6, a, b, t), 1e-12);
  }
}

TEST(KimCorrelatorTest, MatchesOracle) {
  const PauliCoeffs a = PauliCoeffs{0.3, 0.6, -0.2}.normalized(), b = PauliCoeffs{-0.5, 0.4, 0.7}.normalized();
  const ChainSpec spec(build_kim({0.4, 0.6}), 8);
  for (int t = 0; t <= 3; ++t)
    EXPECT_NEAR(oracle_correlator(spec, a.matrix(), t, b.matrix(), t).real(), kim_correlator(0.4, 0.6, a, b, t), 1e-12);
}

TEST(IntegrableKimTest, OtocFormulas) {
  const PauliCoeffs a{1 / std::sqrt(6.0), 1 / std::sqrt(2.0), 1 / std::sqrt(3.0)};
  const PauliCoeffs b{1 / std::sqrt(6.0), -1 / std::sqrt(2.0), 1 / std::sqrt(3.0)};
  EXPECT_EQ(kim_integrable_otoc(a, b, 5, 3), 1.0);
  EXPECT_EQ(kim_integrable_otoc(a, b, 1, 3), 1.0);
  const double yz = a.y * b.y + a.z * b.z;
  EXPECT_NEAR(kim_integrable_otoc(a, b, 3, 3), 2 * (yz * yz + a.x * a.x * b.x * b.x) - 1, 1e-15);
  EXPECT_NEAR(kim_integrable_otoc(a, b, 2, 3), a.x * a.x + std::pow(1 - a.x, 2) * (2 * b.x * b.x - 1), 1e-15);
  EXPECT_NEAR(kim_integrable_otoc_corrected(a, b, 2, 3), a.x * a.x + (1 - a.x * a.x) * (2 * b.x * b.x - 1), 1e-15);
  EXPECT_NEAR(kim_integrable_otoc_corrected(a, b, 3, 3), kim_integrable_otoc(a, b, 3, 3), 0.0);
}

TEST(IntegrableKimTest, CorrectedOddBranchMatchesOracle) {
  const PauliCoeffs a = PauliCoeffs{0.6, 0.3, -0.5}.normalized(), b = PauliCoeffs{0.2, -0.7, 0.4}.normalized();
  const ChainSpec spec(build_kim({0.0, 0.0}), 8);
  for (int t = 0; t <= 3; ++t)
    for (int x = 0; x <= t; ++x)
      EXPECT_NEAR(oracle_otoc(spec, a.matrix(), b.matrix(), x, t).real(), kim_integrable_otoc_corrected(a, b, x, t),
                  1e-12)
          << "x=" << x << " t=" << t;
}

TEST(IntegrableKimTest, CorrelatorKeepsOnlyX) {
  const PauliCoeffs a = PauliCoeffs{0.6, 0.3, -0.5}.normalized(), b = PauliCoeffs{0.2, -0.7, 0.4}.normalized();
  const Gate g = build_kim({0.0, 0.0});
  for (int t = 0; t <= 5; ++t)
    EXPECT_NEAR(lightcone_correlator(g, a.matrix(), b.matrix(), t).real(), kim_integrable_correlator(a, b, t), 1e-12);
  EXPECT_NEAR(std::abs(lightcone_correlator(g, pauli::z(), pauli::z(), 5)), 0.0, 1e-15);
}

TEST(XyLongtimeTest, TableBranches) {
  const PauliCoeffs x{1, 0, 0}, y{0, 1, 0}, z{0, 0, 1};
  EXPECT_DOUBLE_EQ(xy_longtime(y, x, 0), 1.0);
  EXPECT_DOUBLE_EQ(xy_longtime(x, z, 0), 1.0);
  EXPECT_DOUBLE_EQ(xy_longtime(x, x, 0), -1.0);
  EXPECT_DOUBLE_EQ(xy_longtime(z, x, 3), 1.0);
  EXPECT_DOUBLE_EQ(xy_longtime(y, x, 1), 1.0);
  EXPECT_DOUBLE_EQ(xy_longtime(y, y, 4), 1.0);
  EXPECT_DOUBLE_EQ(xy_longtime(y, z, 2), 1.0);
  EXPECT_THROW(xy_longtime(x, x, -1), Error);
}

TEST(XyLongtimeTest, PeriodFourOffCone) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const PauliCoeffs a = testing::random_direction(rng), b = testing::random_direction(rng);
    for (int tx = 1; tx <= 8; ++tx) EXPECT_DOUBLE_EQ(xy_longtime(a, b, tx), xy_longtime(a, b, tx + 4));
  }
}

TEST(XyCorrelatorTest, MatchesChannelIteration) {
  const PauliCoeffs a = PauliCoeffs{0.3, 0.6, -0.2}.normalized(), b = PauliCoeffs{-0.5, 0.4, 0.7}.normalized();
  for (double j : {kPi / 10, kPi / 6, 0.7}) {
    const Gate g = build_xy({j});
    for (int t = 0; t <= 10; ++t)
      EXPECT_NEAR(lightcone_correlator(g, a.matrix(), b.matrix(), t).real(), xy_correlator(j, a, b, t), 1e-12);
  }
}

TEST(HaarProjectorTest, IsAProjectorWithPairingAndSwapFixed) {
  for (int q : {2, 3}) {
    const Mat p = haar_projector(q);
    EXPECT_LT(max_abs(p * p - p), 1e-12);
    EXPECT_LT(max_abs(p - p.adjoint()), 1e-15);
    EXPECT_NEAR(p.trace().real(), 2.0, 1e-12);
    EXPECT_LT((p * legs::circ(q) - legs::circ(q)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((p * legs::pairing(q) - legs::pairing(q)).cwiseAbs().maxCoeff(), 1e-12);
  }
  EXPECT_THROW(haar_projector(1), Error);
}

TEST(HaarProjectorTest, MatchesDualUnitaryEigenbasis) {
  const Vec e0 = e_tilde(LocalDim(2), 1, 0), e1 = e_tilde(LocalDim(2), 1, 1);
  const Mat projector = e0 * e0.transpose() + e1 * e1.transpose();
  EXPECT_LT(max_abs(haar_projector(2) - projector), 1e-12);
}

}  // namespace
}  // namespace mvc
