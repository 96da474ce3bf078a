// Copyright 2026 The ebkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

#include "ebkit/choi.hpp"
#include "ebkit/linalg.hpp"

namespace ebkit {

using Rng = std::mt19937_64;

/// Seed for the k-th independent stream derived from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k);

double uniform(Rng& rng, double lo, double hi);

/// Independent standard complex Gaussian entries.
CMatrix random_ginibre(int rows, int cols, Rng& rng);
CMatrix random_hermitian(int d, Rng& rng);
/// G G^dag with G of shape d x rank (rank <= 0 means full rank).
CMatrix random_psd(int d, Rng& rng, int rank = 0);
CVector random_unit_vector(int d, Rng& rng);
/// Haar-distributed unitary.
CMatrix random_unitary(int d, Rng& rng);
RMatrix random_real_matrix(int rows, int cols, Rng& rng, double lo = -1.0, double hi = 1.0);

/// Random CP map with Wishart-distributed Choi matrix of trace din.
QuantumMap random_cp_map(int din, int dout, Rng& rng);

/// Random CP and coCP map on M_d: a random PSD Choi matrix alternately
/// clipped to the PSD cone and to the PPT cone, then shifted by a multiple of
/// the identity so that both margins are nonnegative. Trace normalized to d.
QuantumMap random_ppt_map(int d, Rng& rng, int rounds = 40);

}  // namespace ebkit
