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

// Entanglement-assisted classical capacity
//
//   C_EA(N) = max_rho  S(rho) + S(N(rho)) - S(N^c(rho)),
//
// computed by projected gradient ascent over density matrices, and the
// min-entropy requirements it implies for randomness-utilizing processes.

#include <cstdint>
#include <utility>
#include <vector>

#include "catalyst/channels.hpp"
#include "catalyst/qcore.hpp"
#include "catalyst/randproc.hpp"

namespace catalyst {

inline constexpr double kLogClamp = 1e-12;

struct CapacityOptions {
  double tol = 1e-6;
  std::size_t max_iter = 2000;
  std::uint64_t seed = 7;
  std::size_t random_starts = 4;
};

struct CapacityReport {
  double c_ea = 0.0;
  DensityMatrix optimizer_input;
  std::size_t iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;
};

/// Mutual information of (id (x) N) applied to a purification of rho, in bits.
double ea_objective(const QChannel& c, const CMatrix& rho);
double ea_objective(const KrausSet& k, const CMatrix& rho);

/// Euclidean gradient of ea_objective at a full-rank rho (Hermitian).
CMatrix ea_gradient(const QChannel& c, const CMatrix& rho);
CMatrix ea_gradient(const KrausSet& k, const CMatrix& rho);

/// Frobenius-nearest density matrix (eigenvalues projected onto the simplex).
CMatrix project_to_density(const CMatrix& m);

/// Multi-start projected gradient ascent. Never throws on slow convergence:
/// the best value found is returned with converged = false.
CapacityReport ea_capacity(const QChannel& c, const CapacityOptions& opts = {});

/// (2 log d - c_ea, log d - c_ea / 2), floored at 0. Throws outside [0, 2 log d].
std::pair<double, double> min_entropy_bounds(double c_ea, std::size_t d);

struct BoundReport {
  double c_ea = 0.0;
  double classical_bound = 0.0;
  double quantum_bound = 0.0;
  double source_min_entropy = 0.0;
  bool classical_ok = false;
  bool quantum_ok = false;
  bool classical_hint = false;

  /// The bound that applies to this use of the source.
  bool holds() const { return classical_hint ? classical_ok : quantum_ok; }
};

BoundReport check_bound(const RandProcess& p, bool classical_hint, double tol = 1e-6,
                        const CapacityOptions& opts = {});

struct LemmaCapRow {
  double weight = 0.0;
  double c_ea = 0.0;
  double difference = 0.0;  // C_EA(part) - C_EA(whole)
  double bound = 0.0;       // -log2 weight
  bool holds = false;
};

struct LemmaCapReport {
  double whole_c_ea = 0.0;
  std::vector<LemmaCapRow> rows;
  bool all_hold = false;
};

/// Checks C_EA(part) - C_EA(whole) <= -log2 w + tol for every part.
/// Throws DecompositionMismatch when the weighted Choi sum differs from c.
LemmaCapReport lemma_cap_check(const QChannel& c,
                               const std::vector<std::pair<double, QChannel>>& parts,
                               double tol = 1e-3, const CapacityOptions& opts = {});

}  // namespace catalyst
