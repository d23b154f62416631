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

#include <cstdint>
#include <random>

#include "catalyst/qcore.hpp"

namespace catalyst {

/// All sampling threads an explicit engine; there is no global generator.
using Rng = std::mt19937_64;

/// Haar-distributed unitary via QR of a complex Ginibre matrix.
CMatrix haar_unitary(std::size_t d, Rng& rng);
/// Ginibre-ensemble density matrix of the given rank (0 = full rank).
DensityMatrix random_density(std::size_t d, Rng& rng, std::size_t rank = 0);
PureState random_pure(std::size_t d, Rng& rng);
/// Flat-Dirichlet sample; non-degenerate with probability one.
Distribution random_distribution(std::size_t n, Rng& rng);

}  // namespace catalyst
