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
#include <random>
#include <string>

#include "catalyst/constructions.hpp"
#include "catalyst/errors.hpp"
#include "catalyst/random.hpp"

namespace catalyst {
namespace {

constexpr double kPolishStart = 1e-3;
constexpr std::size_t kStallWindow = 500;
constexpr double kStallRatio = 0.9;

bool is_uniform(const Distribution& p) {
  const double u = 1.0 / static_cast<double>(p.size());
  for (double x : p.probs()) {
    if (std::abs(x - u) > kProbSumTol) return false;
  }
  return true;
}

Eigen::MatrixXd phases_of(const CMatrix& v) {
  Eigen::MatrixXd thetas(v.cols(), v.rows());
  for (Eigen::Index r = 0; r < v.rows(); ++r) {
    for (Eigen::Index n = 0; n < v.cols(); ++n) {
      thetas(n, r) = std::abs(v(r, n)) > 0.0 ? std::arg(v(r, n)) : 0.0;
    }
  }
  return thetas;
}

// Rescales row m to modulus sqrt(p_m) keeping phases; zero entries get phase 0.
void project_moduli(CMatrix& v, const std::vector<double>& amps) {
  for (Eigen::Index r = 0; r < v.rows(); ++r) {
    for (Eigen::Index n = 0; n < v.cols(); ++n) {
      const double mag = std::abs(v(r, n));
      v(r, n) = mag > 0.0 ? v(r, n) * (amps[static_cast<std::size_t>(r)] / mag)
                          : Complex(amps[static_cast<std::size_t>(r)], 0.0);
    }
  }
}


// Qubit case in closed form: the weighted unit vectors p_m e^{i phi_m} must close a polygon.
// Grouping into a prefix, a pivot and a suffix gives a triangle whose sides are all <= 1/2.
Eigen::MatrixXd qubit_phases(const Distribution& p) {
  const std::size_t m = p.size();
  double a = 0.0;
  std::size_t k = 0;
  while (k + 1 < m && a + p[k] < 0.5) a += p[k++];
  const double b = p[k];
  const double c = std::max(0.0, 1.0 - a - b);
  auto angle_opposite = [](double x, double y, double z) {
    // Interior angle between sides y and z of the triangle with sides x, y, z.
    if (y <= 0.0 || z <= 0.0) return 0.0;
    return std::acos(std::clamp((y * y + z * z - x * x) / (2.0 * y * z), -1.0, 1.0));
  };
  // Sides traversed head to tail: a along 0, then b turned by pi - gamma, then c closing.
  const double phi_b = M_PI - angle_opposite(c, a, b);
  const Complex head = std::polar(a, 0.0) + std::polar(b, phi_b);
  const double phi_c = std::abs(head) > 0.0 ? std::arg(-head) : M_PI;
  Eigen::MatrixXd thetas = Eigen::MatrixXd::Zero(2, static_cast<Eigen::Index>(m));
  for (std::size_t r = 0; r < m; ++r) {
    const double phi = r < k ? 0.0 : (r == k ? phi_b : phi_c);
    thetas(1, static_cast<Eigen::Index>(r)) = std::remainder(phi, 2.0 * M_PI);
  }
  return thetas;
}

// Off-diagonal Gram entries sum_m p_m exp(i(theta_n'm - theta_nm)) for n < n', split into real parts.
Eigen::VectorXd gram_residual(const Eigen::MatrixXd& t, const std::vector<double>& p) {
  const Eigen::Index d = t.rows();
  Eigen::VectorXd r(d * (d - 1));
  Eigen::Index row = 0;
  for (Eigen::Index n = 0; n < d; ++n) {
    for (Eigen::Index q = n + 1; q < d; ++q) {
      Complex s(0.0, 0.0);
      for (Eigen::Index k = 0; k < t.cols(); ++k) s += std::polar(p[static_cast<std::size_t>(k)], t(q, k) - t(n, k));
      r(row++) = s.real();
      r(row++) = s.imag();
    }
  }
  return r;
}

Eigen::MatrixXd gram_jacobian(const Eigen::MatrixXd& t, const std::vector<double>& p) {
  const Eigen::Index d = t.rows(), m = t.cols();
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(d * (d - 1), d * m);
  Eigen::Index row = 0;
  for (Eigen::Index n = 0; n < d; ++n) {
    for (Eigen::Index q = n + 1; q < d; ++q) {
      for (Eigen::Index k = 0; k < m; ++k) {
        const Complex e = std::polar(p[static_cast<std::size_t>(k)], t(q, k) - t(n, k));
        // d/d theta_qk of e is i e; d/d theta_nk is -i e. Parameters are stored column-major.
        j(row, k * d + q) += -e.imag();
        j(row + 1, k * d + q) += e.real();
        j(row, k * d + n) += e.imag();
        j(row + 1, k * d + n) += -e.real();
      }
      row += 2;
    }
  }
  return j;
}

// Levenberg-Marquardt with minimum-norm steps on the underdetermined Gram system.
void polish(Eigen::MatrixXd& t, const std::vector<double>& p, double tol) {
  double mu = 1e-6;
  Eigen::VectorXd r = gram_residual(t, p);
  double cost = r.squaredNorm();
  for (int it = 0; it < 1000 && std::sqrt(2.0 * cost) > 0.1 * tol; ++it) {
    const Eigen::MatrixXd j = gram_jacobian(t, p);
    Eigen::MatrixXd jj = j * j.transpose();
    jj.diagonal().array() += mu;
    const Eigen::VectorXd step = -j.transpose() * jj.ldlt().solve(r);
    Eigen::MatrixXd trial = t;
    trial.reshaped() += step;
    const Eigen::VectorXd tr = gram_residual(trial, p);
    if (tr.squaredNorm() < cost) {
      t = std::move(trial);
      r = tr;
      cost = tr.squaredNorm();
      mu = std::max(1e-15, mu * 0.1);
    } else {
      mu *= 10.0;
      if (mu > 1e8) break;
    }
  }
}

}  // namespace

PhaseMatrix phase_solver(const Distribution& p, std::size_t d, const PhaseSolverOptions& opts) {
  if (d < 1) throw DimensionMismatch("phase solver needs d >= 1");
  const std::size_t m = p.size();
  if (m < d || p.max() > 1.0 / static_cast<double>(d) + 1e-12) {
    throw Infeasible("source min-entropy is below log2 d (max p = " + std::to_string(p.max()) + ")");
  }
  if (m == d && is_uniform(p)) {
    Eigen::MatrixXd thetas(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(m));
    for (std::size_t n = 0; n < d; ++n) {
      for (std::size_t k = 0; k < m; ++k) {
        thetas(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k)) =
            2.0 * M_PI * static_cast<double>((n * k) % d) / static_cast<double>(d);
      }
    }
    return PhaseMatrix(std::move(thetas), p);
  }
  if (m == d) {
    // A square isometry is unitary, so every row must have unit norm.
    throw Infeasible("with as many outcomes as dimensions only the uniform source admits phases");
  }

  if (d == 2) {
    PhaseMatrix out(qubit_phases(p), p);
    if (out.defect() <= opts.tol) return out;
  }

  std::vector<double> amps(m);
  for (std::size_t r = 0; r < m; ++r) amps[r] = std::sqrt(p[r]);

  Rng rng(opts.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  double best_defect = kInfinity;
  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(1, opts.restarts); ++attempt) {
    CMatrix v(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(d));
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      for (Eigen::Index n = 0; n < v.cols(); ++n) {
        v(r, n) = std::polar(amps[static_cast<std::size_t>(r)], angle(rng));
      }
    }
    double checkpoint = kInfinity;
    for (std::size_t it = 0; it < opts.max_iter; ++it) {
      v = polar_unitary(v);
      project_moduli(v, amps);
      const double defect = (v.adjoint() * v - CMatrix::Identity(v.cols(), v.cols())).norm();
      const bool stalled = it % kStallWindow == kStallWindow - 1 && defect > kStallRatio * checkpoint;
      if (it % kStallWindow == kStallWindow - 1) checkpoint = defect;
      if (defect <= opts.tol || (defect <= kPolishStart && it % 50 == 0) || stalled ||
          it + 1 == opts.max_iter) {
        Eigen::MatrixXd thetas = phases_of(v);
        polish(thetas, p.probs(), opts.tol);
        PhaseMatrix out(std::move(thetas), p);
        best_defect = std::min(best_defect, out.defect());
        if (out.defect() <= opts.tol) return out;
        if (stalled) break;
      }
    }
  }
  throw NoConvergence("phase solver did not reach the isometry tolerance", best_defect);
}

}  // namespace catalyst
