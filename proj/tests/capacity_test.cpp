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
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "catalyst/capacity.hpp"
#include "catalyst/constructions.hpp"
#include "catalyst/errors.hpp"
#include "catalyst/generators.hpp"
#include "catalyst/random.hpp"

namespace catalyst {
namespace {

CMatrix pauli(char which) {
  CMatrix m = CMatrix::Zero(2, 2);
  switch (which) {
    case 'X':
      m(0, 1) = m(1, 0) = 1.0;
      break;
    case 'Y':
      m(0, 1) = Complex(0.0, -1.0);
      m(1, 0) = Complex(0.0, 1.0);
      break;
    case 'Z':
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      m = CMatrix::Identity(2, 2);
  }
  return m;
}

CMatrix random_traceless_hermitian(std::size_t d, Rng& rng) {
  std::normal_distribution<double> gauss;
  CMatrix h(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = 0; j < h.cols(); ++j) h(i, j) = Complex(gauss(rng), gauss(rng));
  }
  h = 0.5 * (h + h.adjoint());
  h -= h.trace() / static_cast<double>(d) * CMatrix::Identity(h.rows(), h.cols());
  return h / h.norm();
}

std::vector<QChannel> sample_channels(Rng& rng) {
  std::vector<QChannel> out{QChannel::dephasing(2), QChannel::erasure(3)};
  for (int i = 0; i < 4; ++i) {
    out.push_back(channel_from_stinespring(UnitaryOp::from(haar_unitary(4, rng), Dims{2, 2}),
                                           random_density(2, rng), Traced::B));
    out.push_back(channel_from_stinespring(UnitaryOp::from(haar_unitary(6, rng), Dims{3, 2}),
                                           random_density(2, rng), Traced::B));
  }
  return out;
}

TEST(Capacity, ReferenceValues) {
  EXPECT_NEAR(ea_capacity(QChannel::dephasing(2)).c_ea, 1.0, 1e-3);
  EXPECT_NEAR(ea_capacity(QChannel::erasure(2)).c_ea, 0.0, 1e-3);
  EXPECT_NEAR(ea_capacity(QChannel::identity(2)).c_ea, 2.0, 1e-3);
}

TEST(Capacity, UnitaryAndConstantChannels) {
  Rng rng(301);
  for (std::size_t d = 2; d <= 4; ++d) {
    EXPECT_NEAR(ea_capacity(QChannel::unitary(haar_unitary(d, rng))).c_ea, 2.0 * std::log2(double(d)), 1e-3);
    EXPECT_NEAR(ea_capacity(QChannel::constant(random_density(3, rng), d)).c_ea, 0.0, 1e-3);
  }
}

TEST(Capacity, PauliChannelMatchesClosedForm) {
  // Bell-diagonal Choi state: C_EA = 2 - H(p).
  const std::vector<double> p{0.7, 0.2, 0.1};
  const QChannel c = mix({{p[0], QChannel::identity(2)},
                          {p[1], QChannel::unitary(pauli('X'))},
                          {p[2], QChannel::unitary(pauli('Z'))}});
  double h = 0.0;
  for (double x : p) h -= x * std::log2(x);
  EXPECT_NEAR(ea_capacity(c).c_ea, 2.0 - h, 1e-3);
}

TEST(Capacity, ReportIsConsistent) {
  Rng rng(302);
  for (const QChannel& c : sample_channels(rng)) {
    const CapacityReport r = ea_capacity(c);
    EXPECT_GE(r.c_ea, 0.0);
    EXPECT_LE(r.c_ea, 2.0 * std::log2(double(c.in_dim())) + 1e-6);
    EXPECT_NEAR(r.c_ea, std::max(0.0, ea_objective(c, r.optimizer_input.matrix())), 1e-9);
  }
}

TEST(Capacity, NoInputBeatsTheOptimum) {
  Rng rng(303);
  for (const QChannel& c : sample_channels(rng)) {
    const double best = ea_capacity(c).c_ea;
    for (int i = 0; i < 50; ++i) {
      EXPECT_LE(ea_objective(c, random_density(c.in_dim(), rng).matrix()), best + 1e-6);
    }
  }
}

TEST(Capacity, RejectsLargeInputs) {
  EXPECT_THROW(ea_capacity(QChannel::identity(9)), DimensionMismatch);
}

TEST(Objective, Concavity) {
  Rng rng(304);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const QChannel& c : sample_channels(rng)) {
    for (int i = 0; i < 10; ++i) {
      const CMatrix r1 = random_density(c.in_dim(), rng).matrix();
      const CMatrix r2 = random_density(c.in_dim(), rng).matrix();
      const double lambda = unit(rng);
      const double mixed = ea_objective(c, lambda * r1 + (1.0 - lambda) * r2);
      EXPECT_GE(mixed, lambda * ea_objective(c, r1) + (1.0 - lambda) * ea_objective(c, r2) - 1e-9);
    }
  }
}

TEST(Objective, GradientMatchesFiniteDifferences) {
  Rng rng(305);
  const double h = 1e-5;
  for (const QChannel& c : sample_channels(rng)) {
    for (int i = 0; i < 5; ++i) {
      // Mixing with I/d keeps the point interior so the perturbed states stay full rank.
      const std::size_t d = c.in_dim();
      const CMatrix rho = 0.5 * random_density(d, rng).matrix() +
                          0.5 * CMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)) / double(d);
      const CMatrix dir = random_traceless_hermitian(d, rng);
      const double numeric = (ea_objective(c, rho + h * dir) - ea_objective(c, rho - h * dir)) / (2.0 * h);
      const double analytic = (ea_gradient(c, rho) * dir).trace().real();
      EXPECT_LE(std::abs(numeric - analytic), 1e-4 * std::max(1.0, std::abs(analytic)));
    }
  }
}

TEST(Projection, ProducesNearestDensity) {
  Rng rng(306);
  const CMatrix rho = random_density(3, rng).matrix();
  EXPECT_LE((project_to_density(rho) - rho).norm(), 1e-12);
  const CMatrix shifted = rho + 0.7 * random_traceless_hermitian(3, rng);
  const CMatrix p = project_to_density(shifted);
  EXPECT_NEAR(p.trace().real(), 1.0, 1e-12);
  EXPECT_GE(hermitian_eigensystem(p).values.minCoeff(), -1e-12);
}

TEST(Bounds, Examples) {
  EXPECT_EQ(min_entropy_bounds(1.0, 2), std::make_pair(1.0, 0.5));
  EXPECT_EQ(min_entropy_bounds(0.0, 2), std::make_pair(2.0, 1.0));
  EXPECT_EQ(min_entropy_bounds(2.0, 2), std::make_pair(0.0, 0.0));
  EXPECT_THROW(min_entropy_bounds(2.5, 2), Error);
  EXPECT_THROW(min_entropy_bounds(-0.1, 2), Error);
}

TEST(Bounds, ClassicalGapIsNonNegative) {
  for (double c = 0.0; c <= 4.0; c += 0.25) {
    const auto [classical, quantum] = min_entropy_bounds(c, 4);
    EXPECT_GE(classical, quantum - 1e-12);
  }
}

TEST(CheckBound, ConstructionsAreTight) {
  const BoundReport deph = check_bound(uniform_dephasing(2), true);
  EXPECT_TRUE(deph.holds());
  EXPECT_NEAR(deph.source_min_entropy, deph.classical_bound, 1e-3);
  const BoundReport erase = check_bound(weyl_erasure(2), true);
  EXPECT_TRUE(erase.holds());
  EXPECT_NEAR(erase.source_min_entropy, 2.0, 1e-12);
  EXPECT_NEAR(erase.classical_bound, 2.0, 1e-3);
  const BoundReport worked = check_bound(
      classical_dephasing_from_source(Distribution::from({0.125, 0.375, 0.5}), 2), true);
  EXPECT_TRUE(worked.holds());
  EXPECT_NEAR(worked.source_min_entropy, 1.0, 1e-12);
}

TEST(CheckBound, RejectsNonUtilizingProcess) {
  CMatrix swap = CMatrix::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
  const RandProcess p(UnitaryOp::from(swap, Dims{2, 2}), DensityMatrix::maximally_mixed(2));
  EXPECT_THROW(check_bound(p, false), NotRandomnessUtilizing);
}

TEST(LemmaCap, DephasingHoldsWithEquality) {
  const LemmaCapReport r = lemma_cap_check(
      QChannel::dephasing(2), {{0.5, QChannel::identity(2)}, {0.5, QChannel::unitary(pauli('Z'))}});
  EXPECT_TRUE(r.all_hold);
  for (const LemmaCapRow& row : r.rows) EXPECT_NEAR(row.difference, row.bound, 2e-3);
}

TEST(LemmaCap, TrivialDecomposition) {
  Rng rng(307);
  const QChannel c = channel_from_stinespring(UnitaryOp::from(haar_unitary(4, rng), Dims{2, 2}),
                                              random_density(2, rng), Traced::B);
  const LemmaCapReport r = lemma_cap_check(c, {{1.0, c}});
  EXPECT_TRUE(r.all_hold);
  EXPECT_NEAR(r.rows.front().difference, 0.0, 1e-6);
}

TEST(LemmaCap, ReportsViolationForUnbalancedPauliMixture) {
  // 0.9 id + 0.1 Z has C_EA = 2 - H(0.9) = 1.531, so the identity part exceeds -log2 0.9.
  const LemmaCapReport r = lemma_cap_check(
      mix({{0.9, QChannel::identity(2)}, {0.1, QChannel::unitary(pauli('Z'))}}),
      {{0.9, QChannel::identity(2)}, {0.1, QChannel::unitary(pauli('Z'))}});
  EXPECT_FALSE(r.rows[0].holds);
  EXPECT_TRUE(r.rows[1].holds);
  EXPECT_NEAR(r.rows[0].difference, 2.0 - (2.0 - 0.4689955935892812), 1e-3);
}

TEST(LemmaCap, RejectsMismatchedDecomposition) {
  EXPECT_THROW(lemma_cap_check(QChannel::dephasing(2), {{0.5, QChannel::identity(2)}}), DecompositionMismatch);
  EXPECT_THROW(lemma_cap_check(QChannel::dephasing(2), {{0.0, QChannel::identity(2)},
                                                        {1.0, QChannel::dephasing(2)}}),
               DecompositionMismatch);
}

}  // namespace
}  // namespace catalyst
