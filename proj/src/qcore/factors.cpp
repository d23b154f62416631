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
#include <string>

#include "catalyst/errors.hpp"
#include "catalyst/qcore.hpp"

namespace catalyst {
namespace {

// compose[s * rest_dim + r] is the full index whose selected-factor coordinate
// is s (in the order given by `selected`) and whose remaining-factor
// coordinate is r (remaining factors ascending).
struct FactorSplit {
  std::size_t sel_dim = 1;
  std::size_t rest_dim = 1;
  std::vector<std::size_t> compose;

  std::size_t full(std::size_t s, std::size_t r) const { return compose[s * rest_dim + r]; }
};

FactorSplit split_factors(const Dims& dims, const FactorList& selected) {
  const std::size_t nf = dims.size();
  std::vector<bool> is_sel(nf, false);
  for (std::size_t f : selected) {
    if (f >= nf) throw DimensionMismatch("factor index " + std::to_string(f) + " out of range");
    if (is_sel[f]) throw DimensionMismatch("factor listed twice");
    is_sel[f] = true;
  }
  FactorList rest;
  for (std::size_t f = 0; f < nf; ++f) {
    if (!is_sel[f]) rest.push_back(f);
  }

  // Row-major strides of the full space.
  std::vector<std::size_t> stride(nf, 1);
  for (std::size_t f = nf; f-- > 1;) stride[f - 1] = stride[f] * dims[f];

  FactorSplit split;
  for (std::size_t f : selected) split.sel_dim *= dims[f];
  for (std::size_t f : rest) split.rest_dim *= dims[f];
  split.compose.assign(split.sel_dim * split.rest_dim, 0);

  std::vector<std::size_t> sel_offset(split.sel_dim, 0);
  for (std::size_t s = 0; s < split.sel_dim; ++s) {
    std::size_t rem = s, off = 0;
    for (std::size_t q = selected.size(); q-- > 0;) {
      const std::size_t f = selected[q];
      off += (rem % dims[f]) * stride[f];
      rem /= dims[f];
    }
    sel_offset[s] = off;
  }
  std::vector<std::size_t> rest_offset(split.rest_dim, 0);
  for (std::size_t r = 0; r < split.rest_dim; ++r) {
    std::size_t rem = r, off = 0;
    for (std::size_t q = rest.size(); q-- > 0;) {
      const std::size_t f = rest[q];
      off += (rem % dims[f]) * stride[f];
      rem /= dims[f];
    }
    rest_offset[r] = off;
  }
  for (std::size_t s = 0; s < split.sel_dim; ++s) {
    for (std::size_t r = 0; r < split.rest_dim; ++r) {
      split.compose[s * split.rest_dim + r] = sel_offset[s] + rest_offset[r];
    }
  }
  return split;
}

void require_square_dims(const CMatrix& m, const Dims& dims) {
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != product(dims)) {
    throw DimensionMismatch("matrix size " + std::to_string(m.rows()) +
                            " does not match factor dims");
  }
}

}  // namespace

CMatrix partial_trace(const CMatrix& m, const Dims& dims, FactorList keep) {
  require_square_dims(m, dims);
  if (keep.empty()) throw DimensionMismatch("partial trace must keep at least one factor");
  std::sort(keep.begin(), keep.end());
  const FactorSplit split = split_factors(dims, keep);
  const auto k = static_cast<Eigen::Index>(split.sel_dim);
  CMatrix out = CMatrix::Zero(k, k);
  for (std::size_t a = 0; a < split.sel_dim; ++a) {
    for (std::size_t b = 0; b < split.sel_dim; ++b) {
      Complex acc = 0.0;
      for (std::size_t t = 0; t < split.rest_dim; ++t) {
        acc += m(static_cast<Eigen::Index>(split.full(a, t)),
                 static_cast<Eigen::Index>(split.full(b, t)));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& m, const Dims& dims, FactorList keep) {
  std::sort(keep.begin(), keep.end());
  Dims kept;
  for (std::size_t f : keep) {
    if (f < dims.size()) kept.push_back(dims[f]);
  }
  return DensityMatrix::from(partial_trace(m.matrix(), dims, keep), kept);
}

CMatrix reduced_density(const CVector& psi, const Dims& dims, FactorList keep) {
  if (static_cast<std::size_t>(psi.size()) != product(dims)) {
    throw DimensionMismatch("state size does not match factor dims");
  }
  std::sort(keep.begin(), keep.end());
  const FactorSplit split = split_factors(dims, keep);
  CMatrix x(static_cast<Eigen::Index>(split.sel_dim), static_cast<Eigen::Index>(split.rest_dim));
  for (std::size_t s = 0; s < split.sel_dim; ++s) {
    for (std::size_t r = 0; r < split.rest_dim; ++r) {
      x(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(r)) =
          psi(static_cast<Eigen::Index>(split.full(s, r)));
    }
  }
  return x * x.adjoint();
}

CMatrix embed(const CMatrix& op, const Dims& dims, const FactorList& targets) {
  const FactorSplit split = split_factors(dims, targets);
  if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != split.sel_dim) {
    throw DimensionMismatch("operator does not match target factors");
  }
  const auto n = static_cast<Eigen::Index>(product(dims));
  CMatrix out = CMatrix::Zero(n, n);
  for (std::size_t a = 0; a < split.sel_dim; ++a) {
    for (std::size_t b = 0; b < split.sel_dim; ++b) {
      const Complex v = op(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      if (v == Complex(0.0)) continue;
      for (std::size_t t = 0; t < split.rest_dim; ++t) {
        out(static_cast<Eigen::Index>(split.full(a, t)),
            static_cast<Eigen::Index>(split.full(b, t))) = v;
      }
    }
  }
  return out;
}

void apply_to_factors(CVector& psi, const Dims& dims, const FactorList& targets,
                      const CMatrix& op) {
  if (static_cast<std::size_t>(psi.size()) != product(dims)) {
    throw DimensionMismatch("state size does not match factor dims");
  }
  const FactorSplit split = split_factors(dims, targets);
  if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != split.sel_dim) {
    throw DimensionMismatch("operator does not match target factors");
  }
  CMatrix x(static_cast<Eigen::Index>(split.sel_dim), static_cast<Eigen::Index>(split.rest_dim));
  for (std::size_t s = 0; s < split.sel_dim; ++s) {
    for (std::size_t r = 0; r < split.rest_dim; ++r) {
      x(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(r)) =
          psi(static_cast<Eigen::Index>(split.full(s, r)));
    }
  }
  const CMatrix y = op * x;
  for (std::size_t s = 0; s < split.sel_dim; ++s) {
    for (std::size_t r = 0; r < split.rest_dim; ++r) {
      psi(static_cast<Eigen::Index>(split.full(s, r))) =
          y(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(r));
    }
  }
}

Eigensystem hermitian_eigensystem(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  const Eigen::Index n = m.rows();
  Eigensystem out{RVector(n), CMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = es.eigenvalues()(n - 1 - k);
    CVector v = es.eigenvectors().col(n - 1 - k);
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      // Ties go to the lowest index; the slack absorbs rounding noise.
      if (std::abs(v(i)) > best + 1e-12) {
        best = std::abs(v(i));
        pivot = i;
      }
    }
    if (best > 0.0) v *= std::conj(v(pivot)) / std::abs(v(pivot));
    out.vectors.col(k) = v;
  }
  return out;
}

PureState purify(const DensityMatrix& s) {
  const std::size_t d = s.dim();
  const Eigensystem es = hermitian_eigensystem(s.matrix());
  CVector psi = CVector::Zero(static_cast<Eigen::Index>(d * d));
  for (std::size_t i = 0; i < d; ++i) {
    const double lambda = std::max(0.0, es.values(static_cast<Eigen::Index>(i)));
    const double amp = std::sqrt(lambda);
    for (std::size_t a = 0; a < d; ++a) {
      psi(static_cast<Eigen::Index>(a * d + i)) +=
          amp * es.vectors(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(i));
    }
  }
  psi.normalize();
  return PureState::from(std::move(psi), Dims{d, d});
}

Distribution spectrum(const DensityMatrix& s) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s.matrix(), Eigen::EigenvaluesOnly);
  std::vector<double> values(static_cast<std::size_t>(es.eigenvalues().size()));
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = std::max(0.0, es.eigenvalues()(static_cast<Eigen::Index>(values.size() - 1 - i)));
    sum += values[i];
  }
  for (double& v : values) v /= sum;
  return Distribution::from(std::move(values));
}

double trace_norm(const CMatrix& m) {
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues().sum();
}

CMatrix hermitian_log2(const CMatrix& m, double clamp) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  RVector logs = es.eigenvalues().unaryExpr(
      [clamp](double x) { return std::log2(std::max(x, clamp)); });
  return es.eigenvectors() * logs.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix polar_unitary(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace catalyst
