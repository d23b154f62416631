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

#pragma once

// Randomness-utilizing processes: a bipartite unitary U on A (x) B together
// with a source state sigma on B, implementing
//
//   Phi(rho) = Tr_B U (rho (x) sigma) U^dag,
//
// where the environment output Tr_A U (rho (x) sigma) U^dag must not depend on
// rho. The environment output is the residue randomness tau.

#include <optional>
#include <vector>

#include "catalyst/channels.hpp"
#include "catalyst/qcore.hpp"

namespace catalyst {

inline constexpr double kIndependenceTol = 1e-9;
inline constexpr double kDegeneracyGap = 1e-8;

class RandProcess {
 public:
  /// A is inferred as u.dim() / source.dim(); u.factor_dims() keeps any finer
  /// structure (e.g. {d_A1, d_A2, d_B} or {d_A, d_B0, d_B1, d_B2}).
  RandProcess(UnitaryOp u, DensityMatrix source);

  std::size_t d_a() const { return d_a_; }
  std::size_t d_b() const { return source_.dim(); }
  const UnitaryOp& unitary() const { return u_; }
  const DensityMatrix& source() const { return source_; }

  /// Runs the residue-independence test and returns a flagged copy.
  /// Throws NotRandomnessUtilizing if the test fails.
  RandProcess verified(double tol = kIndependenceTol) const;
  std::optional<double> verified_tolerance() const { return verified_tol_; }

  QChannel channel() const;
  QChannel complementary_channel() const;

 private:
  UnitaryOp u_;
  DensityMatrix source_;
  std::size_t d_a_;
  std::optional<double> verified_tol_;
};

struct IndependenceCheck {
  bool randomness_utilizing = false;
  double independence_error = 0.0;
};

struct EntropyRow {
  double alpha;
  double source_bits;
  double residue_bits;
};

struct VerificationReport {
  DensityMatrix residue;
  double independence_error = 0.0;
  bool catalytic = false;
  double spectrum_error = 0.0;
  double unital_error = 0.0;
  bool majorization_ok = false;
  std::vector<EntropyRow> entropy_table;
};

/// Orders tabulated in every VerificationReport.
const std::vector<double>& report_alphas();

/// tau = Tr_A U (I/d (x) sigma) U^dag.
DensityMatrix residue(const RandProcess& p);

/// Checks Tr_A U (|Gamma><Gamma|_RA (x) sigma) U^dag = I_R/d (x) tau in trace norm.
IndependenceCheck is_randomness_utilizing(const RandProcess& p, double tol = kIndependenceTol);

VerificationReport verify(const RandProcess& p, double tol = kIndependenceTol);

/// Unitary V on A (x) C (d_C = d_B, C purifying B) with
/// Tr_BC V^dag U (rho (x) Sigma_BC) U^dag V = rho.
UnitaryOp recovery_unitary(const RandProcess& p, double tol = kIndependenceTol);

/// Runs rho through U, then V^dag on A (x) C, and returns the A marginal.
DensityMatrix recover(const RandProcess& p, const UnitaryOp& v, const DensityMatrix& rho);

/// (V, tau_C): implements the same channel while mapping the source tau -> sigma.
RandProcess reverse_process(const RandProcess& p, double tol = kIndependenceTol);

/// Process on A1 (x) A2 (x) B: forward U on (A1, B), a basis alignment on B,
/// then the reverse process on (A2, B). Factor dims are {d_A, d_A, d_B}.
RandProcess two_copy_catalytic(const RandProcess& p, double tol = kIndependenceTol);

struct TwoCopyMarginals {
  DensityMatrix first;
  DensityMatrix second;
  DensityMatrix source;
};

/// Marginals of the two-copy process on a product input rho1 (x) rho2.
TwoCopyMarginals two_copy_marginals(const RandProcess& composite, const DensityMatrix& rho1,
                                    const DensityMatrix& rho2);

/// Source w|0><0| + (1-w)|1><1| on B0 selecting between p1 (on B1) and p2 (on B2).
RandProcess convex_combine(const RandProcess& p1, const RandProcess& p2, double weight);

struct RandomUnitaryTerm {
  double weight;
  CMatrix unitary;
};

/// Controlled-unitary form of a catalytic process with non-degenerate source.
/// Throws DegenerateSource when an eigenvalue gap is <= tol and NotControlled
/// when an extracted block is not unitary within tol.
std::vector<RandomUnitaryTerm> classical_decomposition(const RandProcess& p,
                                                       double tol = kDegeneracyGap);

QChannel random_unitary_channel(const std::vector<RandomUnitaryTerm>& terms);

}  // namespace catalyst
