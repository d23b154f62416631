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
#include "catalyst/randproc.hpp"

namespace catalyst {
namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

double max_abs_difference(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i < a.size() ? a[i] : 0.0;
    const double y = i < b.size() ? b[i] : 0.0;
    worst = std::max(worst, std::abs(x - y));
  }
  return worst;
}

void require_randomness_utilizing(const RandProcess& p, double tol) {
  const IndependenceCheck check = is_randomness_utilizing(p, tol);
  if (!check.randomness_utilizing) {
    throw NotRandomnessUtilizing(
        "environment output depends on the input (independence error " +
            std::to_string(check.independence_error) + ")",
        check.independence_error);
  }
}

}  // namespace

RandProcess::RandProcess(UnitaryOp u, DensityMatrix source)
    : u_(std::move(u)), source_(std::move(source)), d_a_(0) {
  if (source_.dim() == 0 || u_.dim() % source_.dim() != 0 || u_.dim() == source_.dim()) {
    throw DimensionMismatch("unitary of dimension " + std::to_string(u_.dim()) +
                            " cannot act on A (x) B with d_B = " + std::to_string(source_.dim()));
  }
  d_a_ = u_.dim() / source_.dim();
  if (u_.factor_dims().size() < 2) u_ = u_.with_dims(Dims{d_a_, source_.dim()});
}

RandProcess RandProcess::verified(double tol) const {
  require_randomness_utilizing(*this, tol);
  RandProcess out = *this;
  out.verified_tol_ = tol;
  return out;
}

QChannel RandProcess::channel() const {
  return channel_from_stinespring(u_, source_, Traced::B);
}

QChannel RandProcess::complementary_channel() const {
  return channel_from_stinespring(u_, source_, Traced::A);
}

const std::vector<double>& report_alphas() {
  static const std::vector<double> alphas{0.0, 0.5, 1.0, 2.0, kInfinity};
  return alphas;
}

DensityMatrix residue(const RandProcess& p) {
  const DensityMatrix input = tensor(DensityMatrix::maximally_mixed(p.d_a()), p.source());
  const CMatrix out = p.unitary().matrix() * input.matrix() * p.unitary().matrix().adjoint();
  return DensityMatrix::from(partial_trace(out, Dims{p.d_a(), p.d_b()}, {1}));
}

IndependenceCheck is_randomness_utilizing(const RandProcess& p, double tol) {
  // The complementary Choi matrix divided by d is the R-B state of the
  // left-hand side with factors swapped; trace norms are swap invariant.
  const QChannel comp = p.complementary_channel();
  const double d = static_cast<double>(p.d_a());
  const CMatrix m = comp.choi() / d;
  const CMatrix tau = partial_trace(m, Dims{p.d_b(), p.d_a()}, {0});
  const CMatrix product_form =
      kron(tau, CMatrix::Identity(idx(p.d_a()), idx(p.d_a())) / d);
  const double err = trace_norm(m - product_form);
  return IndependenceCheck{err <= tol, err};
}

VerificationReport verify(const RandProcess& p, double tol) {
  const IndependenceCheck check = is_randomness_utilizing(p, tol);
  if (!check.randomness_utilizing) {
    throw NotRandomnessUtilizing("process failed the residue independence test",
                                 check.independence_error);
  }
  DensityMatrix tau = residue(p);
  const Distribution sigma_spectrum = spectrum(p.source());
  const Distribution tau_spectrum = spectrum(tau);
  const double spectrum_err = max_abs_difference(sigma_spectrum.probs(), tau_spectrum.probs());

  VerificationReport report{std::move(tau), check.independence_error, spectrum_err <= tol, spectrum_err,
                            unital_error(p.channel()), majorizes(sigma_spectrum, tau_spectrum, tol),
                            {}};
  for (double alpha : report_alphas()) {
    report.entropy_table.push_back(EntropyRow{alpha, renyi_entropy(sigma_spectrum, alpha).bits,
                                              renyi_entropy(tau_spectrum, alpha).bits});
  }
  return report;
}

UnitaryOp recovery_unitary(const RandProcess& p, double tol) {
  require_randomness_utilizing(p, tol);
  const std::size_t d = p.d_a(), db = p.d_b();
  const Dims racb{d, d, db, db};  // R, A, B, C

  const PureState gamma = PureState::maximally_entangled(d);
  const PureState sigma_pure = purify(p.source());
  const PureState tau_pure = purify(residue(p));

  CVector left = kron(gamma.amplitudes(), sigma_pure.amplitudes());
  apply_to_factors(left, racb, {1, 2}, p.unitary().matrix());
  const CVector right = kron(gamma.amplitudes(), tau_pure.amplitudes());

  // Reshape |psi>_{RABC} into a matrix from (R, B) to (A, C).
  const std::size_t n = d * db;
  auto reshape = [&](const CVector& psi) {
    CMatrix m(idx(n), idx(n));
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < db; ++b) {
          for (std::size_t c = 0; c < db; ++c) {
            m(idx(a * db + c), idx(r * db + b)) = psi(idx(((r * d + a) * db + b) * db + c));
          }
        }
      }
    }
    return m;
  };
  const CMatrix m_left = reshape(left);
  const CMatrix m_right = reshape(right);

  Eigen::JacobiSVD<CMatrix> svd_right(m_right, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::JacobiSVD<CMatrix> svd_left(m_left);
  const RVector& s = svd_right.singularValues();
  const double mismatch = (s - svd_left.singularValues()).cwiseAbs().maxCoeff();
  if (mismatch > 1e-8) {
    throw RankMismatch("purifications have different Schmidt coefficients (gap " +
                       std::to_string(mismatch) + ")");
  }

  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > 1e-8) ++rank;
  const CMatrix ur = svd_right.matrixU();
  const CMatrix vr = svd_right.matrixV();

  // On range(M_right), V maps M_right x to M_left x; the image basis is Y.
  const CMatrix y = m_left * vr.leftCols(rank) *
                    s.head(rank).cwiseInverse().asDiagonal();
  CMatrix v = y * ur.leftCols(rank).adjoint();
  if (rank < idx(n)) {
    Eigen::HouseholderQR<CMatrix> qr(y);
    const CMatrix q = qr.householderQ();
    v += q.rightCols(idx(n) - rank) * ur.rightCols(idx(n) - rank).adjoint();
  }
  return UnitaryOp::from(polar_unitary(v), Dims{d, db});
}

DensityMatrix recover(const RandProcess& p, const UnitaryOp& v, const DensityMatrix& rho) {
  const std::size_t d = p.d_a(), db = p.d_b();
  if (rho.dim() != d || v.dim() != d * db) throw DimensionMismatch("recovery dimensions");
  const Dims dims{d, d, db, db};  // A, R', B, C
  CVector psi = kron(purify(rho).amplitudes(), purify(p.source()).amplitudes());
  apply_to_factors(psi, dims, {0, 2}, p.unitary().matrix());
  apply_to_factors(psi, dims, {0, 3}, v.matrix().adjoint());
  return DensityMatrix::from(reduced_density(psi, dims, {0}));
}

RandProcess reverse_process(const RandProcess& p, double tol) {
  UnitaryOp v = recovery_unitary(p, tol);
  const PureState tau_pure = purify(residue(p));
  DensityMatrix tau_c =
      partial_trace(DensityMatrix::pure(tau_pure), Dims{p.d_b(), p.d_b()}, {1});
  return RandProcess(std::move(v), std::move(tau_c));
}

RandProcess two_copy_catalytic(const RandProcess& p, double tol) {
  const RandProcess rev = reverse_process(p, tol);
  const std::size_t d = p.d_a(), db = p.d_b();
  const Dims dims{d, d, db};

  // The reverse source is diag(spectrum of tau) in the purifier basis; rotate the
  // residue eigenbasis (the one used by purify) onto it.
  const Eigensystem tau_eig = hermitian_eigensystem(residue(p).matrix());
  const CMatrix align = tau_eig.vectors.adjoint();

  const CMatrix u = embed(rev.unitary().matrix(), dims, {1, 2}) * embed(align, dims, {2}) *
                    embed(p.unitary().matrix(), dims, {0, 2});
  return RandProcess(UnitaryOp::from(u, dims), p.source());
}

TwoCopyMarginals two_copy_marginals(const RandProcess& composite, const DensityMatrix& rho1,
                                    const DensityMatrix& rho2) {
  const std::size_t d = rho1.dim(), db = composite.d_b();
  if (rho2.dim() != d || composite.d_a() != d * d) {
    throw DimensionMismatch("inputs do not match the two-copy process");
  }
  const Dims dims{d, d, db};
  const CMatrix in = kron(kron(rho1.matrix(), rho2.matrix()), composite.source().matrix());
  const CMatrix& u = composite.unitary().matrix();
  const CMatrix out = u * in * u.adjoint();
  return TwoCopyMarginals{DensityMatrix::from(partial_trace(out, dims, {0})),
                          DensityMatrix::from(partial_trace(out, dims, {1})),
                          DensityMatrix::from(partial_trace(out, dims, {2}))};
}

RandProcess convex_combine(const RandProcess& p1, const RandProcess& p2, double weight) {
  if (p1.d_a() != p2.d_a()) throw DimensionMismatch("processes act on different systems");
  if (!(weight >= 0.0 && weight <= 1.0)) throw Error("mixing weight must lie in [0, 1]");
  require_randomness_utilizing(p1, kIndependenceTol);
  require_randomness_utilizing(p2, kIndependenceTol);

  const std::size_t d = p1.d_a(), b1 = p1.d_b(), b2 = p2.d_b();
  const Dims dims{d, 2, b1, b2};
  CMatrix p0 = CMatrix::Zero(2, 2), q0 = CMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  q0(1, 1) = 1.0;
  const CMatrix u = embed(p0, dims, {1}) * embed(p1.unitary().matrix(), dims, {0, 2}) +
                    embed(q0, dims, {1}) * embed(p2.unitary().matrix(), dims, {0, 3});
  const DensityMatrix selector =
      DensityMatrix::diagonal(Distribution::from({weight, 1.0 - weight}));
  DensityMatrix source = tensor(tensor(selector, p1.source()), p2.source());
  return RandProcess(UnitaryOp::from(u, dims), source.with_dims(Dims{2, b1, b2}));
}

std::vector<RandomUnitaryTerm> classical_decomposition(const RandProcess& p, double tol) {
  require_randomness_utilizing(p, kIndependenceTol);
  const std::size_t d = p.d_a(), db = p.d_b();
  const Eigensystem sig = hermitian_eigensystem(p.source().matrix());
  for (Eigen::Index k = 0; k + 1 < sig.values.size(); ++k) {
    if (sig.values(k) - sig.values(k + 1) <= tol) {
      throw DegenerateSource("source eigenvalues " + std::to_string(k) + " and " +
                             std::to_string(k + 1) + " are within the gap tolerance");
    }
  }
  // The residue has the source spectrum; its eigenbasis may differ, so the
  // extra unitary mapping it back is absorbed on the output side.
  const Eigensystem res = hermitian_eigensystem(residue(p).matrix());
  const CMatrix id = CMatrix::Identity(idx(d), idx(d));
  const CMatrix rotated =
      kron(id, res.vectors.adjoint()) * p.unitary().matrix() * kron(id, sig.vectors);

  std::vector<RandomUnitaryTerm> terms;
  for (std::size_t m = 0; m < db; ++m) {
    CMatrix block(idx(d), idx(d));
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) block(idx(a), idx(b)) = rotated(idx(a * db + m), idx(b * db + m));
    }
    const double defect = (block.adjoint() * block - id).norm();
    if (defect > tol) {
      throw NotControlled("block " + std::to_string(m) + " is not unitary (defect " +
                          std::to_string(defect) + ")");
    }
    terms.push_back(RandomUnitaryTerm{std::max(0.0, sig.values(idx(m))), std::move(block)});
  }
  return terms;
}

QChannel random_unitary_channel(const std::vector<RandomUnitaryTerm>& terms) {
  std::vector<CMatrix> ops;
  for (const auto& t : terms) {
    if (t.weight > 0.0) ops.push_back(std::sqrt(t.weight) * t.unitary);
  }
  return QChannel::from_kraus(ops);
}

}  // namespace catalyst
