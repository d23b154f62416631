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

#pragma once

// Samplers for valid randomness-utilizing processes. A Haar-random U almost
// never leaves the environment marginal input independent, so the families
// below are structured: controlled unitaries, the Weyl constructions,
// phase-matrix dephasing, convex combinations and local conjugations.

#include <string>
#include <vector>

#include "catalyst/random.hpp"
#include "catalyst/randproc.hpp"

namespace catalyst {

/// sum_m W_m (x) |m><m| with Haar W_m and a flat-Dirichlet diagonal source.
RandProcess random_controlled_process(std::size_t d_a, std::size_t d_b, Rng& rng);

/// (u (x) v) U (u' (x) w) with source w^dag sigma w, all factors Haar random.
RandProcess locally_conjugated(const RandProcess& p, Rng& rng);

/// Pure source. `product` selects u (x) v; otherwise a controlled unitary
/// with the source fixed to one control state.
RandProcess pure_source_process(std::size_t d_a, std::size_t d_b, Rng& rng, bool product);

/// Random source on `length` outcomes admitting dephasing phases in dimension d.
/// For d = 2 this is any draw with max p <= 1/2 - margin. For d >= 3 the
/// outcomes are split at random into d nonempty classes of total mass 1/d,
/// since max p <= 1/d alone does not guarantee that phases exist.
Distribution realizable_source(std::size_t length, std::size_t d, Rng& rng);

struct GeneratedProcess {
  std::string family;
  RandProcess process;
};

/// `count` processes cycling through every family; d_A stays in {2, 3}.
std::vector<GeneratedProcess> generator_family(std::size_t count, Rng& rng);

}  // namespace catalyst
