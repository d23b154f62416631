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

#include "catalyst/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "catalyst/errors.hpp"
#include "catalyst/random.hpp"

namespace catalyst {
namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

CMatrix forward(const KrausSet& k, const CMatrix& rho) {
  CMatrix out = CMatrix::Zero(k.ops.front().rows(), k.ops.front().rows());
  for (const CMatrix& op : k.ops) out += op * rho * op.adjoint();
  return out;
}

// Environment output: entry (k, l) is Tr(K_k rho K_l^dag).
CMatrix complementary(const KrausSet& k, const CMatrix& rho) {
  const std::size_t n = k.ops.size();
  std::vector<CMatrix> left;
  left.reserve(n);
  for (const CMatrix& op : k.ops) left.push_back(op * rho);
  CMatrix out(idx(n), idx(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      out(idx(a), idx(b)) = (left[a] * k.ops[b].adjoint()).trace();
    }
  }
  return out;
}

// Adjoint of the environment map: Y -> sum_kl Y_lk K_l^dag K_k.
CMatrix complementary_adjoint(const KrausSet& k, const CMatrix& y) {
  const std::size_t n = k.ops.size();
  const Eigen::Index d = k.ops.front().cols();
  CMatrix out = CMatrix::Zero(d, d);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Complex c = y(idx(b), idx(a));
      if (std::abs(c) == 0.0) continue;
      out += c * (k.ops[b].adjoint() * k.ops[a]);
    }
  }
  return out;
}

std::vector<double> simplex_projection(const std::vector<double>& v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0, theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

struct Ascent {
  CMatrix rho;
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  double gap = 0.0;
};

Ascent ascend(const KrausSet& k, CMatrix rho, const CapacityOptions& opts) {
  Ascent run;
  double value = ea_objective(k, rho);
  double step = 1.0;
  double gap = kInfinity;
  std::size_t it = 0;
  for (; it < opts.max_iter; ++it) {
    const CMatrix g = ea_gradient(k, rho);
    gap = (project_to_density(rho + g) - rho).norm();
    if (gap <= opts.tol) {
      run.converged = true;
      break;
    }
    double s = step;
    bool accepted = false;
    while (s > 1e-14) {
      const CMatrix cand = project_to_density(rho + s * g);
      const double slope = (g.adjoint() * (cand - rho)).trace().real();
      const double v = ea_objective(k, cand);
      if (v >= value + 1e-4 * slope) {
        rho = cand;
        value = v;
        accepted = true;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) break;
    step = std::min(2.0 * s, 64.0);
  }
  run.rho = std::move(rho);
  run.value = value;
  run.iterations = it;
  run.gap = gap;
  return run;
}

}  // namespace

double ea_objective(const KrausSet& k, const CMatrix& rho) {
  return von_neumann_entropy(rho) + von_neumann_entropy(forward(k, rho)) -
         von_neumann_entropy(complementary(k, rho));
}

double ea_objective(const QChannel& c, const CMatrix& rho) { return ea_objective(kraus(c), rho); }

CMatrix ea_gradient(const KrausSet& k, const CMatrix& rho) {
  const Eigen::Index d = rho.rows();
  const CMatrix log_out = hermitian_log2(forward(k, rho), kLogClamp);
  const CMatrix log_env = hermitian_log2(complementary(k, rho), kLogClamp);
  CMatrix g = -hermitian_log2(rho, kLogClamp) - apply_adjoint(k, log_out) +
              complementary_adjoint(k, log_env);
  g -= CMatrix::Identity(d, d) / std::log(2.0);
  return 0.5 * (g + g.adjoint());
}

CMatrix ea_gradient(const QChannel& c, const CMatrix& rho) { return ea_gradient(kraus(c), rho); }

CMatrix project_to_density(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  const RVector& values = es.eigenvalues();
  const std::vector<double> projected =
      simplex_projection(std::vector<double>(values.data(), values.data() + values.size()));
  const RVector p = Eigen::Map<const RVector>(projected.data(), values.size());
  return es.eigenvectors() * p.asDiagonal() * es.eigenvectors().adjoint();
}

CapacityReport ea_capacity(const QChannel& c, const CapacityOptions& opts) {
  const std::size_t d = c.in_dim();
  if (d > 8) throw DimensionMismatch("capacity is limited to input dimension 8");
  const KrausSet k = kraus(c);

  std::vector<CMatrix> starts{CMatrix::Identity(idx(d), idx(d)) / static_cast<double>(d)};
  Rng rng(opts.seed);
  for (std::size_t i = 0; i < opts.random_starts; ++i) {
    starts.push_back(random_density(d, rng).matrix());
  }

  Ascent best;
  best.value = -kInfinity;
  for (const CMatrix& start : starts) {
    Ascent run = ascend(k, start, opts);
    if (run.value > best.value + 1e-12 || (run.value > best.value - 1e-12 && run.converged && !best.converged)) {
      best = std::move(run);
    }
  }
  return CapacityReport{std::max(0.0, best.value), DensityMatrix::from(best.rho), best.iterations,
                        best.converged, best.gap};
}

std::pair<double, double> min_entropy_bounds(double c_ea, std::size_t d) {
  const double log_d = std::log2(static_cast<double>(d));
  if (!(c_ea >= -1e-9 && c_ea <= 2.0 * log_d + 1e-9)) {
    throw Error("capacity " + std::to_string(c_ea) + " outside [0, 2 log d]");
  }
  return {std::max(0.0, 2.0 * log_d - c_ea), std::max(0.0, log_d - 0.5 * c_ea)};
}

BoundReport check_bound(const RandProcess& p, bool classical_hint, double tol,
                        const CapacityOptions& opts) {
  const IndependenceCheck check = is_randomness_utilizing(p);
  if (!check.randomness_utilizing) {
    throw NotRandomnessUtilizing("bounds apply to randomness-utilizing processes only",
                                 check.independence_error);
  }
  const std::size_t d = p.d_a();
  const double log_d = std::log2(static_cast<double>(d));
  BoundReport report;
  report.c_ea = std::clamp(ea_capacity(p.channel(), opts).c_ea, 0.0, 2.0 * log_d);
  std::tie(report.classical_bound, report.quantum_bound) = min_entropy_bounds(report.c_ea, d);
  report.source_min_entropy = renyi_entropy(p.source(), kInfinity).bits;
  report.classical_ok = report.source_min_entropy >= report.classical_bound - tol;
  report.quantum_ok = report.source_min_entropy >= report.quantum_bound - tol;
  report.classical_hint = classical_hint;
  return report;
}

LemmaCapReport lemma_cap_check(const QChannel& c,
                               const std::vector<std::pair<double, QChannel>>& parts, double tol,
                               const CapacityOptions& opts) {
  if (parts.empty()) throw DecompositionMismatch("empty decomposition");
  CMatrix sum = CMatrix::Zero(c.choi().rows(), c.choi().cols());
  for (const auto& [w, part] : parts) {
    if (!(w > 0.0)) throw DecompositionMismatch("weights must be positive");
    if (part.in_dim() != c.in_dim() || part.out_dim() != c.out_dim()) {
      throw DecompositionMismatch("part dimensions differ from the channel");
    }
    sum += w * part.choi();
  }
  const double mismatch = (sum - c.choi()).cwiseAbs().maxCoeff();
  if (mismatch > 1e-9) {
    throw DecompositionMismatch("weighted parts differ from the channel by " +
                                std::to_string(mismatch));
  }

  LemmaCapReport report;
  report.whole_c_ea = ea_capacity(c, opts).c_ea;
  report.all_hold = true;
  for (const auto& [w, part] : parts) {
    LemmaCapRow row;
    row.weight = w;
    row.c_ea = ea_capacity(part, opts).c_ea;
    row.difference = row.c_ea - report.whole_c_ea;
    row.bound = -std::log2(w);
    row.holds = row.difference <= row.bound + tol;
    report.all_hold = report.all_hold && row.holds;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace catalyst
