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

#include "ebkit/random.hpp"

#include <algorithm>
#include <cmath>

namespace ebkit {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

CMatrix random_ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = Complex(n(rng), n(rng));
  return g;
}

CMatrix random_hermitian(int d, Rng& rng) {
  const CMatrix g = random_ginibre(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

CMatrix random_psd(int d, Rng& rng, int rank) {
  const CMatrix g = random_ginibre(d, rank > 0 ? rank : d, rng);
  const CMatrix p = g * g.adjoint();
  return 0.5 * (p + p.adjoint());
}

CVector random_unit_vector(int d, Rng& rng) {
  CVector v = random_ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

CMatrix random_unitary(int d, Rng& rng) {
  Eigen::HouseholderQR<CMatrix> qr(random_ginibre(d, d, rng));
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

RMatrix random_real_matrix(int rows, int cols, Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  RMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = u(rng);
  return m;
}

QuantumMap random_cp_map(int din, int dout, Rng& rng) {
  CMatrix c = random_psd(din * dout, rng);
  c *= din / c.trace().real();
  return QuantumMap(din, dout, c);
}

namespace {

CMatrix clip_psd(const CMatrix& m) {
  const EigenDecomposition e = eig_hermitian(0.5 * (m + m.adjoint()), 1e-6);
  const RVector v = e.values.cwiseMax(0.0);
  const CMatrix out = e.vectors * v.cast<Complex>().asDiagonal() * e.vectors.adjoint();
  return 0.5 * (out + out.adjoint());
}

}  // namespace

QuantumMap random_ppt_map(int d, Rng& rng, int rounds) {
  const BipartiteDims dims{d, d};
  CMatrix c = random_psd(d * d, rng);
  for (int r = 0; r < rounds; ++r) {
    c = clip_psd(c);
    c = partial_transpose(clip_psd(partial_transpose(c, dims, Factor::B)), dims, Factor::B);
  }
  c = 0.5 * (c + c.adjoint());
  const double lo = std::min(min_eig(c, 1e-6), min_eig(partial_transpose(c, dims, Factor::B), 1e-6));
  const double shift = std::max(0.0, -lo) + 1e-12 * std::max(1.0, op_norm(c));
  c += shift * CMatrix::Identity(d * d, d * d);
  c *= d / c.trace().real();
  return QuantumMap(d, d, c);
}

}  // namespace ebkit
