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
#include <numeric>
#include <string>

#include "catalyst/constructions.hpp"
#include "catalyst/errors.hpp"

namespace catalyst {

std::vector<double> UniformMixture::reconstruct(std::size_t n) const {
  std::vector<double> out(n, 0.0);
  for (const UniformTerm& t : terms) {
    for (std::size_t i : t.support) out.at(i) += t.weight / static_cast<double>(t.support.size());
  }
  return out;
}

UniformMixture birkhoff_uniformize(const Distribution& p, std::size_t block,
                                   const std::function<void(std::span<const double>)>& observer) {
  const std::size_t n = p.size();
  if (block == 0) throw DimensionMismatch("block size must be positive");
  if (n < block || p.max() > 1.0 / static_cast<double>(block) + 1e-12) {
    throw Infeasible("max probability " + std::to_string(p.max()) + " exceeds 1/" +
                     std::to_string(block));
  }

  std::vector<double> r = p.probs();
  UniformMixture mixture{block, {}};
  std::vector<std::size_t> order(n);
  const double bd = static_cast<double>(block);

  // Every step zeroes the block's smallest entry or makes max(r) = sum(r)/block,
  // so the loop ends after at most n steps (plus slack for rounding).
  for (std::size_t step = 0; step < 2 * n + 2; ++step) {
    const double total = std::accumulate(r.begin(), r.end(), 0.0);
    if (total <= 1e-15) return mixture;

    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return r[a] > r[b]; });
    const double r_block = r[order[block - 1]];
    const double r_next = block < n ? r[order[block]] : 0.0;
    double q = std::min(bd * r_block, total - bd * r_next);
    if (total - q <= 1e-15) q = total;

    std::vector<std::size_t> support(order.begin(), order.begin() + static_cast<long>(block));
    for (std::size_t i : support) {
      r[i] -= q / bd;
      if (r[i] < 1e-15) r[i] = 0.0;
      if (std::abs(r[i] - r_next) <= 1e-15) r[i] = r_next;
    }
    if (q > 1e-15) {
      std::sort(support.begin(), support.end());
      mixture.terms.push_back(UniformTerm{q, std::move(support)});
    }
    if (observer) observer(std::span<const double>(r));
    if (q == total) return mixture;
  }
  throw Error("uniformization did not terminate");
}

}  // namespace catalyst
