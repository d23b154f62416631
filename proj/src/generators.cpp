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

#include "catalyst/generators.hpp"

#include <algorithm>
#include <numeric>

#include "catalyst/constructions.hpp"
#include "catalyst/errors.hpp"

namespace catalyst {
namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

CMatrix controlled_from(const std::vector<CMatrix>& blocks) {
  const std::size_t d_a = static_cast<std::size_t>(blocks.front().rows());
  const std::size_t d_b = blocks.size();
  CMatrix u = CMatrix::Zero(idx(d_a * d_b), idx(d_a * d_b));
  for (std::size_t m = 0; m < d_b; ++m) {
    CMatrix proj = CMatrix::Zero(idx(d_b), idx(d_b));
    proj(idx(m), idx(m)) = 1.0;
    u += kron(blocks[m], proj);
  }
  return u;
}

}  // namespace

Distribution realizable_source(std::size_t length, std::size_t d, Rng& rng) {
  if (d < 2 || length < d) throw DimensionMismatch("realizable source needs length >= d >= 2");
  if (d == 2) {
    for (;;) {
      Distribution p = random_distribution(length, rng);
      if (p.max() <= 0.5 - 1e-3) return p;
    }
  }
  std::vector<std::size_t> order(length);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> cls(length);
  for (std::size_t i = 0; i < length; ++i) cls[order[i]] = i < d ? i : rng() % d;
  std::vector<double> probs(length);
  for (std::size_t c = 0; c < d; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t m = 0; m < length; ++m) {
      if (cls[m] == c) members.push_back(m);
    }
    const Distribution split = random_distribution(members.size(), rng);
    for (std::size_t i = 0; i < members.size(); ++i) probs[members[i]] = split[i] / static_cast<double>(d);
  }
  return Distribution::from(std::move(probs));
}

RandProcess random_controlled_process(std::size_t d_a, std::size_t d_b, Rng& rng) {
  std::vector<CMatrix> blocks;
  for (std::size_t m = 0; m < d_b; ++m) blocks.push_back(haar_unitary(d_a, rng));
  return RandProcess(UnitaryOp::from(controlled_from(blocks), Dims{d_a, d_b}),
                     DensityMatrix::diagonal(random_distribution(d_b, rng)));
}

RandProcess locally_conjugated(const RandProcess& p, Rng& rng) {
  const std::size_t d_a = p.d_a(), d_b = p.d_b();
  const CMatrix u_out = haar_unitary(d_a, rng);
  const CMatrix u_in = haar_unitary(d_a, rng);
  const CMatrix v = haar_unitary(d_b, rng);
  const CMatrix w = haar_unitary(d_b, rng);
  const CMatrix u = kron(u_out, v) * p.unitary().matrix() * kron(u_in, w);
  const CMatrix sigma = w.adjoint() * p.source().matrix() * w;
  return RandProcess(UnitaryOp::from(u, Dims{d_a, d_b}), DensityMatrix::from(sigma));
}

RandProcess pure_source_process(std::size_t d_a, std::size_t d_b, Rng& rng, bool product) {
  const PureState psi = random_pure(d_b, rng);
  if (product) {
    return RandProcess(UnitaryOp::from(kron(haar_unitary(d_a, rng), haar_unitary(d_b, rng)),
                                       Dims{d_a, d_b}),
                       DensityMatrix::pure(psi));
  }
  std::vector<CMatrix> blocks;
  for (std::size_t m = 0; m < d_b; ++m) blocks.push_back(haar_unitary(d_a, rng));
  const std::size_t m = std::uniform_int_distribution<std::size_t>(0, d_b - 1)(rng);
  return RandProcess(UnitaryOp::from(controlled_from(blocks), Dims{d_a, d_b}),
                     DensityMatrix::pure(PureState::basis(d_b, m)));
}

std::vector<GeneratedProcess> generator_family(std::size_t count, Rng& rng) {
  std::vector<GeneratedProcess> out;
  out.reserve(count);
  std::uniform_int_distribution<std::size_t> pick_a(2, 3);
  std::uniform_int_distribution<std::size_t> pick_b(2, 4);
  for (std::size_t i = 0; out.size() < count; ++i) {
    switch (i % 6) {
      case 0:
        out.push_back({"controlled", random_controlled_process(pick_a(rng), pick_b(rng), rng)});
        break;
      case 1: {
        const std::size_t which = (i / 6) % 5;
        if (which < 3) {
          out.push_back({"uniform-dephasing", uniform_dephasing(which + 2)});
        } else {
          out.push_back({"weyl-erasure", weyl_erasure(which - 1)});
        }
        break;
      }
      case 2: {
        const std::size_t length = std::uniform_int_distribution<std::size_t>(3, 5)(rng);
        PhaseSolverOptions opts;
        opts.seed = rng();
        out.push_back({"classical-dephasing",
                       classical_dephasing_from_source(realizable_source(length, 2, rng), 2, opts)});
        break;
      }
      case 3: {
        const std::size_t d_a = pick_a(rng);
        const double w = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
        out.push_back({"convex", convex_combine(random_controlled_process(d_a, 2, rng),
                                                random_controlled_process(d_a, 2, rng), w)});
        break;
      }
      case 4:
        out.push_back({"conjugated-controlled",
                       locally_conjugated(random_controlled_process(pick_a(rng), pick_b(rng), rng), rng)});
        break;
      default: {
        const RandProcess base = (i / 6) % 2 == 0 ? uniform_dephasing(2) : weyl_erasure(2);
        out.push_back({"conjugated-weyl", locally_conjugated(base, rng)});
        break;
      }
    }
  }
  return out;
}

}  // namespace catalyst
