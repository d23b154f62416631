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

// Dense linear algebra for small composite quantum systems.
//
// Composite indices are row-major over the factor list: for dims {d0, d1, d2}
// the basis state |i0 i1 i2> sits at (i0 * d1 + i1) * d2 + i2, which is the
// ordering produced by the Kronecker product.

#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace catalyst {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Dims = std::vector<std::size_t>;
using FactorList = std::vector<std::size_t>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Numerical thresholds shared by the value types.
inline constexpr double kHermitianTol = 1e-12;   // scaled by dim
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kProbClamp = 1e-14;
inline constexpr double kProbSumTol = 1e-12;
inline constexpr double kRankClamp = 1e-14;

std::size_t product(const Dims& dims);

/// Finite probability vector. Entries in [-1e-14, 0) are clamped to zero.
class Distribution {
 public:
  static Distribution from(std::vector<double> probs);
  static Distribution uniform(std::size_t n);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }
  double max() const;
  std::vector<double> sorted_descending() const;

 private:
  explicit Distribution(std::vector<double> probs) : probs_(std::move(probs)) {}
  std::vector<double> probs_;
};

class PureState {
 public:
  static PureState from(CVector amplitudes, Dims dims = {});
  static PureState basis(std::size_t d, std::size_t index);
  /// (1/sqrt d) sum_i |i>|i> on dims {d, d}.
  static PureState maximally_entangled(std::size_t d);

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const Dims& dims() const { return dims_; }
  const CVector& amplitudes() const { return amplitudes_; }

 private:
  PureState(CVector amplitudes, Dims dims)
      : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {}
  CVector amplitudes_;
  Dims dims_;
};

class DensityMatrix {
 public:
  /// Validates hermiticity, positivity and unit trace; stores the hermitian part.
  static DensityMatrix from(const CMatrix& m, Dims dims = {});
  static DensityMatrix maximally_mixed(std::size_t d);
  static DensityMatrix diagonal(const Distribution& p);
  static DensityMatrix pure(const PureState& psi);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Dims& dims() const { return dims_; }
  const CMatrix& matrix() const { return m_; }
  DensityMatrix with_dims(Dims dims) const;

 private:
  DensityMatrix(CMatrix m, Dims dims) : m_(std::move(m)), dims_(std::move(dims)) {}
  CMatrix m_;
  Dims dims_;
};

class UnitaryOp {
 public:
  static UnitaryOp from(const CMatrix& m, Dims factor_dims = {});
  static UnitaryOp identity(Dims factor_dims);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Dims& factor_dims() const { return dims_; }
  const CMatrix& matrix() const { return m_; }
  UnitaryOp adjoint() const { return UnitaryOp(m_.adjoint(), dims_); }
  UnitaryOp with_dims(Dims dims) const;

 private:
  UnitaryOp(CMatrix m, Dims dims) : m_(std::move(m)), dims_(std::move(dims)) {}
  CMatrix m_;
  Dims dims_;
};

/// Renyi entropy in bits; alpha may be 0 or kInfinity.
struct EntropyValue {
  double alpha = 1.0;
  double bits = 0.0;
};

// ---------------------------------------------------------------------------
// Composition and reduction.

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
UnitaryOp tensor(const UnitaryOp& a, const UnitaryOp& b);
PureState tensor(const PureState& a, const PureState& b);

/// General (possibly rectangular) Kronecker product.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Reduces `m` to the factors listed in `keep` (output ordered ascending).
CMatrix partial_trace(const CMatrix& m, const Dims& dims, FactorList keep);
DensityMatrix partial_trace(const DensityMatrix& m, const Dims& dims, FactorList keep);

/// Reduced density matrix of a pure state vector on the `keep` factors.
CMatrix reduced_density(const CVector& psi, const Dims& dims, FactorList keep);

/// Lifts `op` acting on `targets` (in the listed order) to the whole space.
CMatrix embed(const CMatrix& op, const Dims& dims, const FactorList& targets);

/// In-place psi <- (op on targets) psi; op's factor order follows `targets`.
void apply_to_factors(CVector& psi, const Dims& dims, const FactorList& targets,
                      const CMatrix& op);

/// Canonical purification sum_i sqrt(l_i) |e_i>|i> with eigenvalues descending.
PureState purify(const DensityMatrix& s);

// ---------------------------------------------------------------------------
// Spectra and norms.

struct Eigensystem {
  RVector values;   // descending
  CMatrix vectors;  // columns; largest-magnitude entry real positive
};

Eigensystem hermitian_eigensystem(const CMatrix& m);
Distribution spectrum(const DensityMatrix& s);
double trace_norm(const CMatrix& m);
/// log2 of a positive semidefinite matrix with eigenvalues clamped below at `clamp`.
CMatrix hermitian_log2(const CMatrix& m, double clamp);
/// Nearest unitary (polar factor).
CMatrix polar_unitary(const CMatrix& m);

// ---------------------------------------------------------------------------
// Entropies and majorization.

EntropyValue renyi_entropy(const Distribution& p, double alpha);
EntropyValue renyi_entropy(const DensityMatrix& s, double alpha);
double von_neumann_entropy(const DensityMatrix& s);
double von_neumann_entropy(const CMatrix& s);

bool majorizes(const Distribution& p, const Distribution& q, double tol = kProbSumTol);

/// S(A) + S(B) - S(AB) in bits for dims {d_A, d_B}.
double mutual_information(const DensityMatrix& m, const Dims& dims);

// ---------------------------------------------------------------------------
// Weyl operators on a d-level system.

CMatrix shift_operator(std::size_t d);  // X|n> = |n+1 mod d>
CMatrix clock_operator(std::size_t d);  // Z|n> = exp(2 pi i n / d)|n>
CMatrix matrix_power(const CMatrix& m, std::size_t k);

}  // namespace catalyst
