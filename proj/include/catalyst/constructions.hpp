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

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "catalyst/channels.hpp"
#include "catalyst/qcore.hpp"
#include "catalyst/randproc.hpp"

namespace catalyst {

// ---------------------------------------------------------------------------
// Uniform-source constructions.

/// U = sum_m Z^m (x) |m><m| with sigma = I/d.
RandProcess uniform_dephasing(std::size_t d);

/// U = sum_{a,b} X^a Z^b (x) |ab><ab| with sigma = I/d^2 (d_B = d^2).
RandProcess weyl_erasure(std::size_t d);

// ---------------------------------------------------------------------------
// Classical dephasing with a non-uniform source.

/// Phases theta(n, m) such that sum_m p_m exp(i(theta_nm - theta_n'm)) = delta_nn'.
class PhaseMatrix {
 public:
  PhaseMatrix(Eigen::MatrixXd thetas, Distribution source);

  std::size_t dim() const { return static_cast<std::size_t>(thetas_.rows()); }
  const Eigen::MatrixXd& thetas() const { return thetas_; }
  const Distribution& source() const { return source_; }

  /// V with V(m, n) = sqrt(p_m) exp(i theta_nm); an isometry iff the phases dephase.
  CMatrix isometry() const;
  /// || V^dag V - I ||_F
  double defect() const;

 private:
  Eigen::MatrixXd thetas_;  // d x M
  Distribution source_;
};

struct PhaseSolverOptions {
  double tol = 1e-10;
  std::size_t max_iter = 20000;
  std::uint64_t seed = 1;
  std::size_t restarts = 16;
};

/// Alternating projections between the prescribed-row-modulus set and the
/// isometries, finished by a Levenberg-Marquardt step on the phases. Uniform p
/// of length d returns the Fourier phases directly and d = 2 is solved in
/// closed form by closing a triangle. Throws Infeasible when max p > 1/d or
/// when p is non-uniform on exactly d outcomes, and NoConvergence when no
/// attempt reaches the tolerance (which does not prove infeasibility).
PhaseMatrix phase_solver(const Distribution& p, std::size_t d, const PhaseSolverOptions& opts = {});

/// Controlled process sum_m Z_m (x) |m><m|, Z_m = sum_n exp(i theta_nm)|n><n|, sigma = diag(p).
RandProcess classical_dephasing(const PhaseMatrix& phases);
RandProcess classical_dephasing_from_source(const Distribution& p, std::size_t d,
                                            const PhaseSolverOptions& opts = {});

/// Controlled process sum_m W_m (x) |m><m| with sigma = diag(p) implementing
/// rho -> I/d. The unitaries come from alternating projections between
/// co-isometries V (columns sqrt(d p_m) vec W_m) and scaled unitary columns.
/// Uniform p on d^2 outcomes returns weyl_erasure(d).
RandProcess classical_erasure_from_source(const Distribution& p, std::size_t d,
                                          const PhaseSolverOptions& opts = {});

// ---------------------------------------------------------------------------
// Uniformization of a high min-entropy source.

struct UniformTerm {
  double weight;
  std::vector<std::size_t> support;  // ascending, size = block
};

struct UniformMixture {
  std::size_t block = 0;
  std::vector<UniformTerm> terms;

  /// sum_k w_k uniform(S_k) over n outcomes.
  std::vector<double> reconstruct(std::size_t n) const;
};

/// Greedy decomposition of p into uniform distributions on `block` outcomes.
/// The observer, when set, sees the remaining vector after every step.
UniformMixture birkhoff_uniformize(
    const Distribution& p, std::size_t block,
    const std::function<void(std::span<const double>)>& observer = {});

// ---------------------------------------------------------------------------
// Generalized randomness-utilizing processes.
//
// Layout A (x) B (x) W1 (x) W2 with W1, W2 of dimension k (the number of
// uniform blocks). Conditioned on the source eigenstate i, the workspace is
// prepared in sum_k sqrt(P(k|i)) |k>|k>; the position of i inside block k is
// then uniform on the block and drives the target unitary family on A.
// The output system is A (x) W2 and the reusable residue is B (x) W1.

enum class GeneralizedTarget { Dephasing, Erasure };

struct GeneralizedProcess {
  GeneralizedTarget kind;
  UnitaryOp u;               // factor dims {d_A, d_B, k, k}
  DensityMatrix source;      // on B
  QChannel target;           // Psi on A
  DensityMatrix leftover;    // tau on W2
  UniformMixture mixture;

  std::size_t d_a() const { return target.in_dim(); }
  std::size_t d_b() const { return source.dim(); }
  std::size_t workspace() const { return leftover.dim(); }
};

GeneralizedProcess generalized_dephasing(const Distribution& p, std::size_t d);
GeneralizedProcess generalized_erasure(const Distribution& p, std::size_t d);
/// Same construction over an arbitrary source state, controlled on its eigenbasis.
GeneralizedProcess generalized_process(GeneralizedTarget kind, const DensityMatrix& source,
                                       std::size_t d);

/// Tr_{B W1} U (rho (x) sigma (x) |00><00|) U^dag on A (x) W2.
DensityMatrix generalized_output(const GeneralizedProcess& g, const DensityMatrix& rho);
/// || output - Psi(rho) (x) tau ||_1
double factorization_error(const GeneralizedProcess& g, const DensityMatrix& rho);
/// W2 marginal of the output.
DensityMatrix leftover_of(const GeneralizedProcess& g, const DensityMatrix& rho);
/// Post-process state of B (x) W1 (input independent).
DensityMatrix reusable_source(const GeneralizedProcess& g);
/// The process built on reusable_source(g), with its own fresh workspace.
GeneralizedProcess next_round(const GeneralizedProcess& g);

struct RepeatRunReport {
  double round1_factorization = 0.0;
  double round1_independence = 0.0;
  double round2_factorization = 0.0;
  double round2_independence = 0.0;
  double reusable_min_entropy = 0.0;
};

/// Runs both rounds on one global state (round two consumes B (x) W1 after
/// round one) for `trials` random input pairs and reports worst errors.
RepeatRunReport repeat_run(const GeneralizedProcess& g, std::uint64_t seed, std::size_t trials);

}  // namespace catalyst
