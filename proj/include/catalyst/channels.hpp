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

// Quantum channels stored by their Choi matrix
//
//   J = sum_ij Phi(|i><j|) (x) |i><j|     on out (x) in,
//
// so Tr J = in_dim and trace preservation reads Tr_out J = I_in.

#include <optional>
#include <utility>
#include <vector>

#include "catalyst/qcore.hpp"

namespace catalyst {

inline constexpr double kChoiPsdTol = 1e-10;
inline constexpr double kTracePreservingTol = 1e-9;
inline constexpr double kKrausRankClamp = 1e-12;

class QChannel {
 public:
  static QChannel from_choi(const CMatrix& choi, std::size_t in_dim, std::size_t out_dim);
  static QChannel from_kraus(const std::vector<CMatrix>& ops);
  static QChannel unitary(const CMatrix& u);
  static QChannel identity(std::size_t d);
  /// Complete dephasing in the computational basis.
  static QChannel dephasing(std::size_t d);
  /// Completely depolarizing map rho -> I/d.
  static QChannel erasure(std::size_t d);
  /// rho -> Tr(rho) tau.
  static QChannel constant(const DensityMatrix& tau, std::size_t in_dim);

  std::size_t in_dim() const { return in_dim_; }
  std::size_t out_dim() const { return out_dim_; }
  const CMatrix& choi() const { return choi_; }

 private:
  QChannel(CMatrix choi, std::size_t in_dim, std::size_t out_dim)
      : choi_(std::move(choi)), in_dim_(in_dim), out_dim_(out_dim) {}
  CMatrix choi_;
  std::size_t in_dim_;
  std::size_t out_dim_;
};

struct KrausSet {
  std::vector<CMatrix> ops;  // out_dim x in_dim each
  std::optional<Distribution> weights;

  /// || sum K^dag K - I ||_F
  double completeness_defect() const;
};

enum class Traced { A, B };

/// Choi matrix of rho -> Tr_traced U (rho (x) sigma) U^dag, where A has
/// dimension u.dim() / sigma.dim(). Tracing A gives the complementary channel.
QChannel channel_from_stinespring(const UnitaryOp& u, const DensityMatrix& sigma, Traced traced);

/// Linear action on an arbitrary in_dim x in_dim operator.
CMatrix apply(const QChannel& c, const CMatrix& x);
DensityMatrix apply(const QChannel& c, const DensityMatrix& rho);
DensityMatrix apply(const KrausSet& k, const DensityMatrix& rho);

/// Adjoint map Y -> sum_k K_k^dag Y K_k.
CMatrix apply_adjoint(const KrausSet& k, const CMatrix& y);

/// (id (x) Phi) on a state of dims {d_R, in_dim}.
CMatrix apply_to_second_factor(const QChannel& c, const CMatrix& x, std::size_t d_r);

/// || Phi(I/d) - I/d ||_1 for a square channel.
double unital_error(const QChannel& c);
bool is_unital(const QChannel& c, double tol);

KrausSet kraus(const QChannel& c);

/// Normalized Choi trace distance || J_a - J_b ||_1 / (2 in_dim).
double channel_distance(const QChannel& a, const QChannel& b);

/// sum_i w_i Phi_i; weights must be a probability vector.
QChannel mix(const std::vector<std::pair<double, QChannel>>& parts);

}  // namespace catalyst
