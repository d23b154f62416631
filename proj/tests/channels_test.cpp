// Copyright 2026 The catalyst-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include <gtest/gtest.h>

#include "catalyst/channels.hpp"
#include "catalyst/errors.hpp"
#include "catalyst/random.hpp"

namespace catalyst {
namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

CMatrix swap_matrix(std::size_t d) {
  CMatrix s = CMatrix::Zero(idx(d * d), idx(d * d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) s(idx(i * d + j), idx(j * d + i)) = 1.0;
  }
  return s;
}

CMatrix choi_from_kraus(const KrausSet& k) {
  const Eigen::Index dout = k.ops.front().rows(), din = k.ops.front().cols();
  CMatrix j = CMatrix::Zero(dout * din, dout * din);
  for (const CMatrix& op : k.ops) {
    CVector v(dout * din);
    for (Eigen::Index a = 0; a < dout; ++a) {
      for (Eigen::Index i = 0; i < din; ++i) v(a * din + i) = op(a, i);
    }
    j += v * v.adjoint();
  }
  return j;
}

// Dephasing in the computational basis by definition: keep the diagonal.
CMatrix dephase(const CMatrix& rho) { return CMatrix(rho.diagonal().asDiagonal()); }

void expect_valid_channel(const QChannel& c) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(c.choi());
  EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
  const CMatrix tp = partial_trace(c.choi(), {c.out_dim(), c.in_dim()}, {1});
  EXPECT_LT((tp - CMatrix::Identity(idx(c.in_dim()), idx(c.in_dim()))).norm(), 1e-9);
}

TEST(Stinespring, IdentityUnitaryGivesIdentityChannel) {
  Rng rng(31);
  const QChannel c = channel_from_stinespring(UnitaryOp::identity({2, 3}), random_density(3, rng), Traced::B);
  const CVector gamma = PureState::maximally_entangled(2).amplitudes();
  EXPECT_LT((c.choi() - 2.0 * gamma * gamma.adjoint()).norm(), 1e-12);
}

TEST(Stinespring, SwapGivesConstantChannel) {
  Rng rng(32);
  const DensityMatrix sigma = random_density(2, rng);
  const QChannel c = channel_from_stinespring(UnitaryOp::from(swap_matrix(2)), sigma, Traced::B);
  EXPECT_LT(channel_distance(c, QChannel::constant(sigma, 2)), 1e-12);
  for (int i = 0; i < 5; ++i) {
    EXPECT_LT((catalyst::apply(c, random_density(2, rng)).matrix() - sigma.matrix()).norm(), 1e-12);
  }
}

TEST(Stinespring, ControlledClockDephases) {
  const CMatrix z = clock_operator(2);
  CMatrix u = CMatrix::Zero(4, 4);
  u.block(0, 0, 2, 2).setIdentity();
  // Build sum_m Z^m (x) |m><m| explicitly on A (x) B.
  u.setZero();
  for (std::size_t m = 0; m < 2; ++m) {
    CMatrix proj = CMatrix::Zero(2, 2);
    proj(idx(m), idx(m)) = 1.0;
    u += kron(matrix_power(z, m), proj);
  }
  const QChannel c = channel_from_stinespring(UnitaryOp::from(u), DensityMatrix::maximally_mixed(2), Traced::B);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      CMatrix e = CMatrix::Zero(2, 2);
      e(idx(i), idx(j)) = 1.0;
      EXPECT_LT((catalyst::apply(c, e) - dephase(e)).norm(), 1e-12);
    }
  }
}

TEST(Stinespring, RandomDilationsAreValidChannels) {
  Rng rng(33);
  for (const auto& [da, db] : {std::pair{2, 2}, std::pair{2, 4}, std::pair{3, 3}}) {
    for (int i = 0; i < 5; ++i) {
      const UnitaryOp u = UnitaryOp::from(haar_unitary(da * db, rng), {std::size_t(da), std::size_t(db)});
      const DensityMatrix sigma = random_density(db, rng);
      expect_valid_channel(channel_from_stinespring(u, sigma, Traced::B));
      expect_valid_channel(channel_from_stinespring(u, sigma, Traced::A));
    }
  }
}

TEST(Stinespring, ComplementaryMarginalsAgree) {
  Rng rng(34);
  for (int i = 0; i < 10; ++i) {
    const std::size_t da = 2, db = 3;
    const CMatrix u = haar_unitary(da * db, rng);
    const DensityMatrix sigma = random_density(db, rng), rho = random_density(da, rng);
    const CMatrix out = u * kron(rho.matrix(), sigma.matrix()) * u.adjoint();
    const QChannel phi = channel_from_stinespring(UnitaryOp::from(u), sigma, Traced::B);
    const QChannel comp = channel_from_stinespring(UnitaryOp::from(u), sigma, Traced::A);
    EXPECT_LT((catalyst::apply(phi, rho.matrix()) - partial_trace(out, {da, db}, {0})).norm(), 1e-10);
    EXPECT_LT((catalyst::apply(comp, rho.matrix()) - partial_trace(out, {da, db}, {1})).norm(), 1e-10);
  }
}

TEST(Apply, Examples) {
  Rng rng(35);
  const DensityMatrix rho = random_density(3, rng);
  EXPECT_LT((catalyst::apply(QChannel::identity(3), rho).matrix() - rho.matrix()).norm(), 1e-13);
  CMatrix plus = CMatrix::Constant(2, 2, 0.5);
  EXPECT_LT((catalyst::apply(QChannel::dephasing(2), plus) - CMatrix::Identity(2, 2) / 2.0).norm(), 1e-15);
  EXPECT_LT((catalyst::apply(QChannel::erasure(3), rho).matrix() - CMatrix::Identity(3, 3) / 3.0).norm(), 1e-13);
  EXPECT_THROW(catalyst::apply(QChannel::identity(2), rho), DimensionMismatch);
}

TEST(Apply, ChoiAndKrausPathsAgree) {
  Rng rng(36);
  for (int i = 0; i < 10; ++i) {
    const UnitaryOp u = UnitaryOp::from(haar_unitary(6, rng), {3, 2});
    const QChannel c = channel_from_stinespring(u, random_density(2, rng), Traced::B);
    const KrausSet k = kraus(c);
    const DensityMatrix rho = random_density(3, rng);
    EXPECT_LT((catalyst::apply(c, rho).matrix() - catalyst::apply(k, rho).matrix()).norm(), 1e-9);
  }
}

TEST(Unital, Examples) {
  EXPECT_TRUE(is_unital(QChannel::dephasing(3), 1e-12));
  EXPECT_TRUE(is_unital(QChannel::erasure(2), 1e-12));
  const QChannel reset = QChannel::constant(DensityMatrix::pure(PureState::basis(2, 0)), 2);
  EXPECT_FALSE(is_unital(reset, 1e-6));
  EXPECT_NEAR(unital_error(reset), 1.0, 1e-12);
  EXPECT_THROW(unital_error(QChannel::constant(DensityMatrix::maximally_mixed(3), 2)), DimensionMismatch);
}

TEST(Kraus, Examples) {
  const KrausSet id = kraus(QChannel::identity(2));
  ASSERT_EQ(id.ops.size(), 1u);
  EXPECT_LT((id.ops[0] - CMatrix::Identity(2, 2)).norm(), 1e-12);

  const KrausSet deph = kraus(QChannel::dephasing(2));
  EXPECT_EQ(deph.ops.size(), 2u);
  EXPECT_LT(deph.completeness_defect(), 1e-9);
  EXPECT_LT((choi_from_kraus(deph) - QChannel::dephasing(2).choi()).norm(), 1e-10);
  for (const CMatrix& k : deph.ops) EXPECT_LT(std::abs(k(0, 1)) + std::abs(k(1, 0)), 1e-12);

  const KrausSet er = kraus(QChannel::erasure(2));
  EXPECT_EQ(er.ops.size(), 4u);
  EXPECT_LT((choi_from_kraus(er) - QChannel::erasure(2).choi()).norm(), 1e-10);
}

TEST(Kraus, RankMatchesChoiRank) {
  Rng rng(37);
  const UnitaryOp u = UnitaryOp::from(haar_unitary(4, rng), {2, 2});
  const QChannel c = channel_from_stinespring(u, DensityMatrix::pure(PureState::basis(2, 0)), Traced::B);
  // Generic rank is d_B times the rank of the environment state.
  EXPECT_EQ(kraus(c).ops.size(), 2u);
  const QChannel mixed = channel_from_stinespring(u, DensityMatrix::maximally_mixed(2), Traced::B);
  EXPECT_EQ(kraus(mixed).ops.size(), 4u);
}

TEST(Distance, Examples) {
  const QChannel id = QChannel::identity(2), er = QChannel::erasure(2);
  EXPECT_NEAR(channel_distance(id, id), 0.0, 1e-15);
  // Choi difference has eigenvalue 3/2 on |Gamma> and -1/2 on its complement.
  EXPECT_NEAR(channel_distance(id, er), 0.75, 1e-12);
}

TEST(Distance, SymmetricAndTriangle) {
  Rng rng(38);
  auto sample = [&] {
    return channel_from_stinespring(UnitaryOp::from(haar_unitary(4, rng)), random_density(2, rng), Traced::B);
  };
  for (int i = 0; i < 20; ++i) {
    const QChannel a = sample(), b = sample(), c = sample();
    EXPECT_NEAR(channel_distance(a, b), channel_distance(b, a), 1e-12);
    EXPECT_LE(channel_distance(a, c), channel_distance(a, b) + channel_distance(b, c) + 1e-12);
    EXPECT_LE(channel_distance(a, b), 1.0 + 1e-12);
  }
}

TEST(Validation, RejectsNonChannels) {
  EXPECT_THROW(QChannel::from_choi(CMatrix::Identity(4, 4), 2, 2), InvalidChannel);
  CMatrix neg = QChannel::dephasing(2).choi();
  neg(0, 0) = -0.5;
  neg(3, 3) = 2.5;
  EXPECT_THROW(QChannel::from_choi(neg, 2, 2), InvalidChannel);
  EXPECT_THROW(QChannel::from_choi(CMatrix::Identity(3, 3), 2, 2), DimensionMismatch);
  EXPECT_THROW(QChannel::from_kraus({CMatrix(2.0 * CMatrix::Identity(2, 2))}), InvalidChannel);
}

TEST(Mix, AveragesChoiMatrices) {
  const QChannel half = mix({{0.5, QChannel::identity(2)}, {0.5, QChannel::unitary(clock_operator(2))}});
  EXPECT_LT(channel_distance(half, QChannel::dephasing(2)), 1e-12);
  EXPECT_THROW(mix({{0.4, QChannel::identity(2)}}), InvalidChannel);
}

TEST(SecondFactor, ActsOnlyOnSecondSystem) {
  Rng rng(39);
  const DensityMatrix r = random_density(2, rng), s = random_density(3, rng);
  const CMatrix out = apply_to_second_factor(QChannel::erasure(3), kron(r.matrix(), s.matrix()), 2);
  EXPECT_LT((out - kron(r.matrix(), CMatrix::Identity(3, 3) / 3.0)).norm(), 1e-12);
}

}  // namespace
}  // namespace catalyst
