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

#include "catalyst/errors.hpp"
#include "catalyst/qcore.hpp"

namespace catalyst {

EntropyValue renyi_entropy(const Distribution& p, double alpha) {
  if (!(alpha >= 0.0)) throw Error("Renyi order must be non-negative");
  std::vector<double> kept;
  for (double x : p.probs()) {
    if (x > kRankClamp) kept.push_back(x);
  }
  double bits = 0.0;
  if (alpha == 0.0) {
    bits = std::log2(static_cast<double>(kept.size()));
  } else if (alpha == 1.0) {
    for (double x : kept) bits -= x * std::log2(x);  // 0 log 0 := 0
  } else if (std::isinf(alpha)) {
    bits = -std::log2(*std::max_element(kept.begin(), kept.end()));
  } else {
    double power_sum = 0.0;
    for (double x : kept) power_sum += std::pow(x, alpha);
    bits = std::log2(power_sum) / (1.0 - alpha);
  }
  const double cap = std::log2(static_cast<double>(p.size()));
  return EntropyValue{alpha, std::clamp(bits, 0.0, cap)};
}

EntropyValue renyi_entropy(const DensityMatrix& s, double alpha) {
  return renyi_entropy(spectrum(s), alpha);
}

double von_neumann_entropy(const CMatrix& s) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (s + s.adjoint()), Eigen::EigenvaluesOnly);
  double bits = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double x = es.eigenvalues()(i);
    if (x > kRankClamp) bits -= x * std::log2(x);
  }
  return bits;
}

double von_neumann_entropy(const DensityMatrix& s) { return von_neumann_entropy(s.matrix()); }

bool majorizes(const Distribution& p, const Distribution& q, double tol) {
  std::vector<double> a = p.sorted_descending();
  std::vector<double> b = q.sorted_descending();
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  double sa = 0.0, sb = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sa += a[k];
    sb += b[k];
    if (sa < sb - tol) return false;
  }
  return true;
}

double mutual_information(const DensityMatrix& m, const Dims& dims) {
  if (dims.size() != 2 || product(dims) != m.dim()) {
    throw DimensionMismatch("mutual information needs dims {d_A, d_B} matching the state");
  }
  const CMatrix a = partial_trace(m.matrix(), dims, {0});
  const CMatrix b = partial_trace(m.matrix(), dims, {1});
  return von_neumann_entropy(a) + von_neumann_entropy(b) - von_neumann_entropy(m.matrix());
}

}  // namespace catalyst
