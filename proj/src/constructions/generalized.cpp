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

#include "catalyst/constructions.hpp"
#include "catalyst/errors.hpp"
#include "catalyst/random.hpp"

namespace catalyst {
namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

// Unitaries indexed by the extracted uniform value j.
std::vector<CMatrix> target_family(GeneralizedTarget kind, std::size_t d) {
  std::vector<CMatrix> out;
  const CMatrix z = clock_operator(d);
  if (kind == GeneralizedTarget::Dephasing) {
    for (std::size_t j = 0; j < d; ++j) out.push_back(matrix_power(z, j));
  } else {
    const CMatrix x = shift_operator(d);
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) out.push_back(matrix_power(x, a) * matrix_power(z, b));
    }
  }
  return out;
}

// Householder reflection whose first column is the unit vector g (real, g != -e0).
CMatrix unitary_with_first_column(const RVector& g) {
  const Eigen::Index n = g.size();
  CMatrix h = CMatrix::Identity(n, n);
  RVector v = -g;
  v(0) += 1.0;
  const double vv = v.squaredNorm();
  if (vv < 1e-30) return h;
  h -= (2.0 / vv) * (v * v.transpose()).cast<Complex>();
  return h;
}

CMatrix ket0_projector(std::size_t k) {
  CMatrix m = CMatrix::Zero(idx(k), idx(k));
  m(0, 0) = 1.0;
  return m;
}

}  // namespace

GeneralizedProcess generalized_process(GeneralizedTarget kind, const DensityMatrix& source,
                                       std::size_t d) {
  if (d < 2) throw DimensionMismatch("construction needs d >= 2");
  const std::size_t block = kind == GeneralizedTarget::Dephasing ? d : d * d;
  const std::size_t n = source.dim();

  // Source eigenbasis; diagonal sources keep the computational basis so that
  // degenerate spectra stay aligned with the stored outcomes.
  CMatrix basis;
  std::vector<double> probs(n);
  const CMatrix off = source.matrix() - CMatrix(source.matrix().diagonal().asDiagonal());
  if (off.norm() <= 1e-12) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += probs[i] = std::max(0.0, source.matrix()(idx(i), idx(i)).real());
    for (double& x : probs) x /= sum;
  } else {
    const Eigensystem es = hermitian_eigensystem(source.matrix());
    basis = es.vectors;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += probs[i] = std::max(0.0, es.values(idx(i)));
    for (double& x : probs) x /= sum;
  }
  UniformMixture mixture = birkhoff_uniformize(Distribution::from(probs), block);
  const std::size_t k = mixture.terms.size();
  const std::size_t dims_w = k * k;

  // Conditional block distribution P(k|i) and the position of i in block k.
  std::vector<RVector> prep(n, RVector::Zero(idx(dims_w)));
  std::vector<std::vector<std::size_t>> position(n, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t t = 0; t < k; ++t) {
      const auto& s = mixture.terms[t].support;
      const auto it = std::find(s.begin(), s.end(), i);
      if (it == s.end()) continue;
      position[i][t] = static_cast<std::size_t>(it - s.begin());
      const double weight = mixture.terms[t].weight / static_cast<double>(block);
      prep[i](idx(t * k + t)) = weight;
      row += weight;
    }
    if (row <= 0.0) {
      prep[i](0) = 1.0;
    } else {
      prep[i] = (prep[i] / row).cwiseSqrt();
    }
  }

  const std::vector<CMatrix> family = target_family(kind, d);
  const Dims dims{d, n, k, k};
  const std::size_t total = product(dims);
  CMatrix u = CMatrix::Zero(idx(total), idx(total));
  for (std::size_t i = 0; i < n; ++i) {
    const CMatrix g = unitary_with_first_column(prep[i]);
    for (std::size_t w_out = 0; w_out < dims_w; ++w_out) {
      const CMatrix& t = family[position[i][w_out / k]];
      for (std::size_t w_in = 0; w_in < dims_w; ++w_in) {
        const Complex gw = g(idx(w_out), idx(w_in));
        if (gw == Complex(0.0)) continue;
        for (std::size_t a_out = 0; a_out < d; ++a_out) {
          for (std::size_t a_in = 0; a_in < d; ++a_in) {
            u(idx((a_out * n + i) * dims_w + w_out), idx((a_in * n + i) * dims_w + w_in)) =
                gw * t(idx(a_out), idx(a_in));
          }
        }
      }
    }
  }
  if (basis.size() != 0) {
    const CMatrix rotate = embed(basis, dims, {1});
    u = rotate * u * rotate.adjoint();
  }

  std::vector<double> weights;
  for (const auto& t : mixture.terms) weights.push_back(t.weight);
  double wsum = 0.0;
  for (double w : weights) wsum += w;
  for (double& w : weights) w /= wsum;

  QChannel target = kind == GeneralizedTarget::Dephasing ? QChannel::dephasing(d) : QChannel::erasure(d);
  return GeneralizedProcess{kind,
                            UnitaryOp::from(u, dims),
                            source.with_dims(Dims{n}),
                            std::move(target),
                            DensityMatrix::diagonal(Distribution::from(weights)),
                            std::move(mixture)};
}

GeneralizedProcess generalized_dephasing(const Distribution& p, std::size_t d) {
  return generalized_process(GeneralizedTarget::Dephasing, DensityMatrix::diagonal(p), d);
}

GeneralizedProcess generalized_erasure(const Distribution& p, std::size_t d) {
  return generalized_process(GeneralizedTarget::Erasure, DensityMatrix::diagonal(p), d);
}

namespace {

CMatrix full_output(const GeneralizedProcess& g, const CMatrix& rho) {
  const CMatrix w0 = ket0_projector(g.workspace());
  const CMatrix in = kron(kron(kron(rho, g.source.matrix()), w0), w0);
  return g.u.matrix() * in * g.u.matrix().adjoint();
}

Dims layout(const GeneralizedProcess& g) {
  return Dims{g.d_a(), g.d_b(), g.workspace(), g.workspace()};
}

}  // namespace

DensityMatrix generalized_output(const GeneralizedProcess& g, const DensityMatrix& rho) {
  if (rho.dim() != g.d_a()) throw DimensionMismatch("input does not match the process");
  return DensityMatrix::from(partial_trace(full_output(g, rho.matrix()), layout(g), {0, 3}),
                             Dims{g.d_a(), g.workspace()});
}

double factorization_error(const GeneralizedProcess& g, const DensityMatrix& rho) {
  const DensityMatrix out = generalized_output(g, rho);
  return trace_norm(out.matrix() - kron(apply(g.target, rho.matrix()), g.leftover.matrix()));
}

DensityMatrix leftover_of(const GeneralizedProcess& g, const DensityMatrix& rho) {
  return partial_trace(generalized_output(g, rho), Dims{g.d_a(), g.workspace()}, {1});
}

DensityMatrix reusable_source(const GeneralizedProcess& g) {
  const CMatrix mixed = CMatrix::Identity(idx(g.d_a()), idx(g.d_a())) / static_cast<double>(g.d_a());
  return DensityMatrix::from(partial_trace(full_output(g, mixed), layout(g), {1, 2}),
                             Dims{g.d_b(), g.workspace()});
}

GeneralizedProcess next_round(const GeneralizedProcess& g) {
  return generalized_process(g.kind, reusable_source(g).with_dims(Dims{g.d_b() * g.workspace()}),
                             g.d_a());
}

RepeatRunReport repeat_run(const GeneralizedProcess& g, std::uint64_t seed, std::size_t trials) {
  const GeneralizedProcess g2 = next_round(g);
  const std::size_t d = g.d_a(), n = g.d_b(), k = g.workspace(), k2 = g2.workspace();
  // A1 R1 B C W1 W2 A2 R2 V1 V2
  const Dims dims{d, d, n, n, k, k, d, d, k2, k2};
  CVector w0 = CVector::Zero(idx(k));
  w0(0) = 1.0;
  CVector v0 = CVector::Zero(idx(k2));
  v0(0) = 1.0;
  const CVector source = purify(g.source).amplitudes();

  RepeatRunReport report;
  report.reusable_min_entropy = renyi_entropy(reusable_source(g), kInfinity).bits;
  Rng rng(seed);
  CMatrix first_left1, first_left2;
  for (std::size_t t = 0; t < trials; ++t) {
    const DensityMatrix rho1 = random_density(d, rng);
    const DensityMatrix rho2 = random_density(d, rng);
    CVector psi = kron(kron(kron(kron(kron(purify(rho1).amplitudes(), source), w0), w0),
                            purify(rho2).amplitudes()),
                       kron(v0, v0));
    apply_to_factors(psi, dims, {0, 2, 4, 5}, g.u.matrix());
    apply_to_factors(psi, dims, {6, 2, 4, 8, 9}, g2.u.matrix());

    const CMatrix out1 = reduced_density(psi, dims, {0, 5});
    const CMatrix out2 = reduced_density(psi, dims, {6, 9});
    report.round1_factorization =
        std::max(report.round1_factorization,
                 trace_norm(out1 - kron(apply(g.target, rho1.matrix()), g.leftover.matrix())));
    report.round2_factorization =
        std::max(report.round2_factorization,
                 trace_norm(out2 - kron(apply(g2.target, rho2.matrix()), g2.leftover.matrix())));
    const CMatrix left1 = partial_trace(out1, Dims{d, k}, {1});
    const CMatrix left2 = partial_trace(out2, Dims{d, k2}, {1});
    if (t == 0) {
      first_left1 = left1;
      first_left2 = left2;
    } else {
      report.round1_independence = std::max(report.round1_independence, trace_norm(left1 - first_left1));
      report.round2_independence = std::max(report.round2_independence, trace_norm(left2 - first_left2));
    }
  }
  return report;
}

}  // namespace catalyst
