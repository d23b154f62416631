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
#include <string>

#include "catalyst/channels.hpp"
#include "catalyst/errors.hpp"

namespace catalyst {
namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

CMatrix choi_from_kraus(const std::vector<CMatrix>& ops, std::size_t in_dim, std::size_t out_dim) {
  CMatrix j = CMatrix::Zero(idx(in_dim * out_dim), idx(in_dim * out_dim));
  for (const CMatrix& k : ops) {
    CVector v(idx(in_dim * out_dim));
    for (std::size_t a = 0; a < out_dim; ++a) {
      for (std::size_t i = 0; i < in_dim; ++i) v(idx(a * in_dim + i)) = k(idx(a), idx(i));
    }
    j += v * v.adjoint();
  }
  return j;
}

}  // namespace

QChannel QChannel::from_choi(const CMatrix& choi, std::size_t in_dim, std::size_t out_dim) {
  const std::size_t n = in_dim * out_dim;
  if (n == 0 || static_cast<std::size_t>(choi.rows()) != n ||
      static_cast<std::size_t>(choi.cols()) != n) {
    throw DimensionMismatch("Choi matrix must be (out*in) x (out*in)");
  }
  if ((choi - choi.adjoint()).norm() > 1e-9 * static_cast<double>(n)) {
    throw InvalidChannel("Choi matrix is not hermitian");
  }
  CMatrix h = 0.5 * (choi + choi.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kChoiPsdTol) {
    throw InvalidChannel("Choi matrix is not positive (min eigenvalue " +
                         std::to_string(es.eigenvalues().minCoeff()) + ")");
  }
  const CMatrix marginal = partial_trace(h, Dims{out_dim, in_dim}, {1});
  const double tp = (marginal - CMatrix::Identity(idx(in_dim), idx(in_dim))).norm();
  if (tp > kTracePreservingTol) {
    throw InvalidChannel("channel is not trace preserving (defect " + std::to_string(tp) + ")");
  }
  return QChannel(std::move(h), in_dim, out_dim);
}

QChannel QChannel::from_kraus(const std::vector<CMatrix>& ops) {
  if (ops.empty()) throw InvalidChannel("empty Kraus set");
  const auto out_dim = static_cast<std::size_t>(ops.front().rows());
  const auto in_dim = static_cast<std::size_t>(ops.front().cols());
  for (const CMatrix& k : ops) {
    if (static_cast<std::size_t>(k.rows()) != out_dim ||
        static_cast<std::size_t>(k.cols()) != in_dim) {
      throw DimensionMismatch("Kraus operators have inconsistent shapes");
    }
  }
  return from_choi(choi_from_kraus(ops, in_dim, out_dim), in_dim, out_dim);
}

QChannel QChannel::unitary(const CMatrix& u) { return from_kraus({u}); }

QChannel QChannel::identity(std::size_t d) {
  return unitary(CMatrix::Identity(idx(d), idx(d)));
}

QChannel QChannel::dephasing(std::size_t d) {
  std::vector<CMatrix> ops;
  for (std::size_t i = 0; i < d; ++i) {
    CMatrix p = CMatrix::Zero(idx(d), idx(d));
    p(idx(i), idx(i)) = 1.0;
    ops.push_back(std::move(p));
  }
  return from_kraus(ops);
}

QChannel QChannel::erasure(std::size_t d) {
  return constant(DensityMatrix::maximally_mixed(d), d);
}

QChannel QChannel::constant(const DensityMatrix& tau, std::size_t in_dim) {
  return from_choi(kron(tau.matrix(), CMatrix::Identity(idx(in_dim), idx(in_dim))), in_dim,
                   tau.dim());
}

double KrausSet::completeness_defect() const {
  if (ops.empty()) return kInfinity;
  CMatrix sum = CMatrix::Zero(ops.front().cols(), ops.front().cols());
  for (const CMatrix& k : ops) sum += k.adjoint() * k;
  return (sum - CMatrix::Identity(sum.rows(), sum.cols())).norm();
}

QChannel channel_from_stinespring(const UnitaryOp& u, const DensityMatrix& sigma, Traced traced) {
  const std::size_t d_b = sigma.dim();
  if (d_b == 0 || u.dim() % d_b != 0) {
    throw DimensionMismatch("unitary dimension is not a multiple of the source dimension");
  }
  const std::size_t d_a = u.dim() / d_b;
  const std::size_t out_dim = traced == Traced::B ? d_a : d_b;
  const Dims ab{d_a, d_b};
  const FactorList keep = traced == Traced::B ? FactorList{0} : FactorList{1};
  const CMatrix& m = u.matrix();

  CMatrix j = CMatrix::Zero(idx(out_dim * d_a), idx(out_dim * d_a));
  for (std::size_t i = 0; i < d_a; ++i) {
    const CMatrix left = m.middleCols(idx(i * d_b), idx(d_b)) * sigma.matrix();
    for (std::size_t k = 0; k < d_a; ++k) {
      // U (|i><k| (x) sigma) U^dag = U_i sigma U_k^dag with U_i the i-th column block.
      const CMatrix full = left * m.middleCols(idx(k * d_b), idx(d_b)).adjoint();
      const CMatrix out = partial_trace(full, ab, keep);
      for (std::size_t a = 0; a < out_dim; ++a) {
        for (std::size_t b = 0; b < out_dim; ++b) {
          j(idx(a * d_a + i), idx(b * d_a + k)) = out(idx(a), idx(b));
        }
      }
    }
  }
  return QChannel::from_choi(j, d_a, out_dim);
}

CMatrix apply(const QChannel& c, const CMatrix& x) {
  const std::size_t din = c.in_dim(), dout = c.out_dim();
  if (static_cast<std::size_t>(x.rows()) != din || static_cast<std::size_t>(x.cols()) != din) {
    throw DimensionMismatch("input does not match channel input dimension");
  }
  CMatrix out = CMatrix::Zero(idx(dout), idx(dout));
  const CMatrix& j = c.choi();
  for (std::size_t a = 0; a < dout; ++a) {
    for (std::size_t b = 0; b < dout; ++b) {
      Complex acc = 0.0;
      for (std::size_t i = 0; i < din; ++i) {
        for (std::size_t k = 0; k < din; ++k) {
          acc += j(idx(a * din + i), idx(b * din + k)) * x(idx(i), idx(k));
        }
      }
      out(idx(a), idx(b)) = acc;
    }
  }
  return out;
}

DensityMatrix apply(const QChannel& c, const DensityMatrix& rho) {
  return DensityMatrix::from(apply(c, rho.matrix()));
}

DensityMatrix apply(const KrausSet& k, const DensityMatrix& rho) {
  if (k.ops.empty()) throw InvalidChannel("empty Kraus set");
  CMatrix out = CMatrix::Zero(k.ops.front().rows(), k.ops.front().rows());
  for (const CMatrix& op : k.ops) out += op * rho.matrix() * op.adjoint();
  return DensityMatrix::from(out);
}

CMatrix apply_adjoint(const KrausSet& k, const CMatrix& y) {
  CMatrix out = CMatrix::Zero(k.ops.front().cols(), k.ops.front().cols());
  for (const CMatrix& op : k.ops) out += op.adjoint() * y * op;
  return out;
}

CMatrix apply_to_second_factor(const QChannel& c, const CMatrix& x, std::size_t d_r) {
  if (static_cast<std::size_t>(x.rows()) != d_r * c.in_dim()) {
    throw DimensionMismatch("state does not match {d_R, in_dim}");
  }
  const KrausSet ks = kraus(c);
  const CMatrix id = CMatrix::Identity(idx(d_r), idx(d_r));
  CMatrix out = CMatrix::Zero(idx(d_r * c.out_dim()), idx(d_r * c.out_dim()));
  for (const CMatrix& op : ks.ops) {
    const CMatrix lifted = kron(id, op);
    out += lifted * x * lifted.adjoint();
  }
  return out;
}

double unital_error(const QChannel& c) {
  if (c.in_dim() != c.out_dim()) throw DimensionMismatch("unitality needs a square channel");
  const auto d = idx(c.in_dim());
  const CMatrix mixed = CMatrix::Identity(d, d) / static_cast<double>(d);
  return trace_norm(apply(c, mixed) - mixed);
}

bool is_unital(const QChannel& c, double tol) { return unital_error(c) <= tol; }

KrausSet kraus(const QChannel& c) {
  const std::size_t din = c.in_dim(), dout = c.out_dim();
  const Eigensystem es = hermitian_eigensystem(c.choi());
  KrausSet out;
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    const double lambda = es.values(k);
    if (lambda <= kKrausRankClamp) continue;
    CMatrix op(idx(dout), idx(din));
    for (std::size_t a = 0; a < dout; ++a) {
      for (std::size_t i = 0; i < din; ++i) {
        op(idx(a), idx(i)) = std::sqrt(lambda) * es.vectors(idx(a * din + i), k);
      }
    }
    out.ops.push_back(std::move(op));
  }
  return out;
}

double channel_distance(const QChannel& a, const QChannel& b) {
  if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim()) {
    throw DimensionMismatch("channels have different dimensions");
  }
  return trace_norm(a.choi() - b.choi()) / (2.0 * static_cast<double>(a.in_dim()));
}

QChannel mix(const std::vector<std::pair<double, QChannel>>& parts) {
  if (parts.empty()) throw InvalidChannel("empty mixture");
  const QChannel& first = parts.front().second;
  CMatrix j = CMatrix::Zero(first.choi().rows(), first.choi().cols());
  double total = 0.0;
  for (const auto& [w, ch] : parts) {
    if (ch.in_dim() != first.in_dim() || ch.out_dim() != first.out_dim()) {
      throw DimensionMismatch("mixture parts have different dimensions");
    }
    if (w < 0.0) throw InvalidChannel("negative mixture weight");
    j += w * ch.choi();
    total += w;
  }
  if (std::abs(total - 1.0) > kProbSumTol) throw InvalidChannel("mixture weights do not sum to 1");
  return QChannel::from_choi(j, first.in_dim(), first.out_dim());
}

}  // namespace catalyst
