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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "catalyst/errors.hpp"
#include "catalyst/qcore.hpp"

namespace catalyst {

std::size_t product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

namespace {

Dims checked_dims(Dims dims, std::size_t total, const char* what) {
  if (dims.empty()) return Dims{total};
  if (product(dims) != total) {
    throw DimensionMismatch(std::string(what) + ": factor dims do not multiply to " +
                            std::to_string(total));
  }
  return dims;
}

}  // namespace

Distribution Distribution::from(std::vector<double> probs) {
  if (probs.empty()) throw InvalidState("distribution is empty");
  double sum = 0.0;
  for (double& p : probs) {
    if (!std::isfinite(p) || p < -kProbClamp) {
      throw InvalidState("distribution has a negative or non-finite entry");
    }
    if (p < 0.0) p = 0.0;
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbSumTol) {
    throw InvalidState("distribution sums to " + std::to_string(sum));
  }
  return Distribution(std::move(probs));
}

Distribution Distribution::uniform(std::size_t n) {
  if (n == 0) throw InvalidState("distribution is empty");
  return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double Distribution::max() const {
  return *std::max_element(probs_.begin(), probs_.end());
}

std::vector<double> Distribution::sorted_descending() const {
  std::vector<double> out = probs_;
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

PureState PureState::from(CVector amplitudes, Dims dims) {
  const std::size_t n = static_cast<std::size_t>(amplitudes.size());
  if (n == 0) throw InvalidState("pure state is empty");
  if (std::abs(amplitudes.norm() - 1.0) > kNormTol) {
    throw InvalidState("pure state is not normalized");
  }
  dims = checked_dims(std::move(dims), n, "pure state");
  return PureState(std::move(amplitudes), std::move(dims));
}

PureState PureState::basis(std::size_t d, std::size_t index) {
  if (index >= d) throw DimensionMismatch("basis index out of range");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(d));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(std::move(v), Dims{d});
}

PureState PureState::maximally_entangled(std::size_t d) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(d * d));
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i * d + i)) = amp;
  return PureState(std::move(v), Dims{d, d});
}

DensityMatrix DensityMatrix::from(const CMatrix& m, Dims dims) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionMismatch("density matrix must be square and non-empty");
  }
  const std::size_t n = static_cast<std::size_t>(m.rows());
  dims = checked_dims(std::move(dims), n, "density matrix");
  const double asym = (m - m.adjoint()).norm();
  if (asym > kHermitianTol * static_cast<double>(n)) {
    throw InvalidState("density matrix is not hermitian (defect " + std::to_string(asym) + ")");
  }
  CMatrix h = 0.5 * (m + m.adjoint());
  const Complex tr = h.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw InvalidState("density matrix trace is " + std::to_string(tr.real()));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol) {
    throw InvalidState("density matrix has eigenvalue " +
                       std::to_string(es.eigenvalues().minCoeff()));
  }
  return DensityMatrix(std::move(h), std::move(dims));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t d) {
  CMatrix m = CMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)) /
              static_cast<double>(d);
  return DensityMatrix(std::move(m), Dims{d});
}

DensityMatrix DensityMatrix::diagonal(const Distribution& p) {
  const auto n = static_cast<Eigen::Index>(p.size());
  CMatrix m = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = p[static_cast<std::size_t>(i)];
  return DensityMatrix(std::move(m), Dims{p.size()});
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint(), psi.dims());
}

DensityMatrix DensityMatrix::with_dims(Dims dims) const {
  return DensityMatrix(m_, checked_dims(std::move(dims), dim(), "density matrix"));
}

UnitaryOp UnitaryOp::from(const CMatrix& m, Dims factor_dims) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionMismatch("unitary must be square and non-empty");
  }
  const std::size_t n = static_cast<std::size_t>(m.rows());
  factor_dims = checked_dims(std::move(factor_dims), n, "unitary");
  const double defect = (m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols())).norm();
  if (defect > kUnitaryTol) {
    throw InvalidState("matrix is not unitary (defect " + std::to_string(defect) + ")");
  }
  return UnitaryOp(m, std::move(factor_dims));
}

UnitaryOp UnitaryOp::identity(Dims factor_dims) {
  const auto n = static_cast<Eigen::Index>(product(factor_dims));
  return UnitaryOp(CMatrix::Identity(n, n), std::move(factor_dims));
}

UnitaryOp UnitaryOp::with_dims(Dims dims) const {
  return UnitaryOp(m_, checked_dims(std::move(dims), dim(), "unitary"));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

namespace {

Dims concat(const Dims& a, const Dims& b) {
  Dims out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::from(kron(a.matrix(), b.matrix()), concat(a.dims(), b.dims()));
}

UnitaryOp tensor(const UnitaryOp& a, const UnitaryOp& b) {
  return UnitaryOp::from(kron(a.matrix(), b.matrix()), concat(a.factor_dims(), b.factor_dims()));
}

PureState tensor(const PureState& a, const PureState& b) {
  return PureState::from(kron(a.amplitudes(), b.amplitudes()), concat(a.dims(), b.dims()));
}

CMatrix shift_operator(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix x = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) x((i + 1) % n, i) = 1.0;
  return x;
}

CMatrix clock_operator(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix z = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    z(i, i) = std::polar(1.0, 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(d));
  }
  return z;
}

CMatrix matrix_power(const CMatrix& m, std::size_t k) {
  CMatrix out = CMatrix::Identity(m.rows(), m.cols());
  for (std::size_t i = 0; i < k; ++i) out = out * m;
  return out;
}

}  // namespace catalyst
