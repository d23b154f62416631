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

#include "catalyst/constructions.hpp"
#include "catalyst/errors.hpp"
#include "catalyst/random.hpp"

namespace catalyst {
namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

// sum_m W_m (x) |m><m| on A (x) B.
CMatrix controlled(const std::vector<CMatrix>& blocks) {
  const std::size_t d = static_cast<std::size_t>(blocks.front().rows());
  const std::size_t db = blocks.size();
  CMatrix u = CMatrix::Zero(idx(d * db), idx(d * db));
  for (std::size_t m = 0; m < db; ++m) {
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) u(idx(a * db + m), idx(b * db + m)) = blocks[m](idx(a), idx(b));
    }
  }
  return u;
}

void require_dim(std::size_t d) {
  if (d < 2) throw DimensionMismatch("construction needs d >= 2");
}

}  // namespace

RandProcess uniform_dephasing(std::size_t d) {
  require_dim(d);
  const CMatrix z = clock_operator(d);
  std::vector<CMatrix> blocks;
  for (std::size_t m = 0; m < d; ++m) blocks.push_back(matrix_power(z, m));
  return RandProcess(UnitaryOp::from(controlled(blocks), Dims{d, d}),
                     DensityMatrix::maximally_mixed(d));
}

RandProcess weyl_erasure(std::size_t d) {
  require_dim(d);
  const CMatrix x = shift_operator(d);
  const CMatrix z = clock_operator(d);
  std::vector<CMatrix> blocks;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) blocks.push_back(matrix_power(x, a) * matrix_power(z, b));
  }
  return RandProcess(UnitaryOp::from(controlled(blocks), Dims{d, d * d}),
                     DensityMatrix::maximally_mixed(d * d));
}

PhaseMatrix::PhaseMatrix(Eigen::MatrixXd thetas, Distribution source)
    : thetas_(std::move(thetas)), source_(std::move(source)) {
  if (static_cast<std::size_t>(thetas_.cols()) != source_.size() || thetas_.rows() == 0) {
    throw DimensionMismatch("phase matrix must be d x M with M = source length");
  }
}

CMatrix PhaseMatrix::isometry() const {
  const Eigen::Index d = thetas_.rows(), m = thetas_.cols();
  CMatrix v(m, d);
  for (Eigen::Index r = 0; r < m; ++r) {
    const double amp = std::sqrt(source_[static_cast<std::size_t>(r)]);
    for (Eigen::Index n = 0; n < d; ++n) v(r, n) = std::polar(amp, thetas_(n, r));
  }
  return v;
}

double PhaseMatrix::defect() const {
  const CMatrix v = isometry();
  return (v.adjoint() * v - CMatrix::Identity(v.cols(), v.cols())).norm();
}

RandProcess classical_dephasing(const PhaseMatrix& phases) {
  const std::size_t d = phases.dim();
  const std::size_t m = phases.source().size();
  std::vector<CMatrix> blocks;
  for (std::size_t k = 0; k < m; ++k) {
    CMatrix z = CMatrix::Zero(idx(d), idx(d));
    for (std::size_t n = 0; n < d; ++n) z(idx(n), idx(n)) = std::polar(1.0, phases.thetas()(idx(n), idx(k)));
    blocks.push_back(std::move(z));
  }
  return RandProcess(UnitaryOp::from(controlled(blocks), Dims{d, m}),
                     DensityMatrix::diagonal(phases.source()));
}

RandProcess classical_dephasing_from_source(const Distribution& p, std::size_t d,
                                            const PhaseSolverOptions& opts) {
  return classical_dephasing(phase_solver(p, d, opts));
}

RandProcess classical_erasure_from_source(const Distribution& p, std::size_t d,
                                          const PhaseSolverOptions& opts) {
  require_dim(d);
  const std::size_t m = p.size();
  const std::size_t d2 = d * d;
  if (m < d2 || p.max() > 1.0 / static_cast<double>(d2) + 1e-12) {
    throw Infeasible("source min-entropy is below 2 log2 d (max p = " + std::to_string(p.max()) + ")");
  }
  bool uniform = m == d2;
  for (double x : p.probs()) uniform = uniform && std::abs(x - 1.0 / static_cast<double>(d2)) <= kProbSumTol;
  if (uniform) return weyl_erasure(d);

  std::vector<double> scale(m);
  for (std::size_t k = 0; k < m; ++k) scale[k] = std::sqrt(static_cast<double>(d) * p[k]);
  auto unitary_columns = [&](CMatrix& v, std::vector<CMatrix>& blocks) {
    for (std::size_t k = 0; k < m; ++k) {
      CMatrix w(idx(d), idx(d));
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) w(idx(a), idx(b)) = v(idx(a * d + b), idx(k));
      }
      w = scale[k] > 0.0 && w.norm() > 0.0 ? polar_unitary(w) : CMatrix(CMatrix::Identity(idx(d), idx(d)));
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) v(idx(a * d + b), idx(k)) = scale[k] * w(idx(a), idx(b));
      }
      blocks[k] = std::move(w);
    }
  };

  // First attempt: largest-first assignment of outcomes to the d^2 Weyl operators, which is
  // already exact whenever the outcome masses split into d^2 bins of 1/d^2.
  std::vector<CMatrix> weyl;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      weyl.push_back(matrix_power(shift_operator(d), a) * matrix_power(clock_operator(d), b));
    }
  }
  std::vector<std::size_t> order(m);
  for (std::size_t k = 0; k < m; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return p[x] > p[y]; });
  std::vector<double> load(d2, 0.0);
  std::vector<CMatrix> greedy(m);
  for (std::size_t k : order) {
    const std::size_t bin = static_cast<std::size_t>(std::min_element(load.begin(), load.end()) - load.begin());
    load[bin] += p[k];
    greedy[k] = weyl[bin];
  }

  Rng rng(opts.seed);
  std::vector<CMatrix> blocks(m);
  double best_defect = kInfinity;
  constexpr std::size_t kStallWindow = 500;
  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(1, opts.restarts); ++attempt) {
    CMatrix v(idx(d2), idx(m));
    for (std::size_t k = 0; k < m; ++k) {
      const CMatrix w = attempt == 0 ? greedy[k] : haar_unitary(d, rng);
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) v(idx(a * d + b), idx(k)) = scale[k] * w(idx(a), idx(b));
      }
    }
    double checkpoint = kInfinity;
    for (std::size_t it = 0; it < opts.max_iter; ++it) {
      if (it > 0 || attempt > 0) v = polar_unitary(v);
      unitary_columns(v, blocks);
      const double defect = (v * v.adjoint() - CMatrix::Identity(idx(d2), idx(d2))).norm();
      best_defect = std::min(best_defect, defect);
      if (defect <= opts.tol) {
        return RandProcess(UnitaryOp::from(controlled(blocks), Dims{d, m}), DensityMatrix::diagonal(p));
      }
      if (it % kStallWindow == kStallWindow - 1) {
        if (defect > 0.9 * checkpoint) break;
        checkpoint = defect;
      }
    }
  }
  throw NoConvergence("erasure solver did not reach the co-isometry tolerance", best_defect);
}

}  // namespace catalyst
