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

#include "ebkit/linalg.hpp"
#include "ebkit/sdp_apps.hpp"

namespace ebkit {

/// sigma_n = direct sum of n copies of [[0, 1], [-1, 0]].
RMatrix symplectic_form(int n);

/// Gaussian channel gamma -> X gamma X^T + Y on n modes (means omitted).
class GaussianChannel {
 public:
  /// Throws DimMismatch unless X and Y are 2n x 2n, DomainError unless Y is
  /// symmetric within 1e-12 (relative) and all entries are finite.
  GaussianChannel(RMatrix x, RMatrix y, double tol_psd = kDefaultTolPsd);

  int modes() const { return n_; }
  const RMatrix& x() const { return x_; }
  const RMatrix& y() const { return y_; }
  /// Validity recorded at construction.
  bool valid() const { return valid_; }

 private:
  int n_;
  RMatrix x_;
  RMatrix y_;
  bool valid_;
};

/// Y + i(sigma - X sigma X^T).
CMatrix validity_matrix(const GaussianChannel& c);
/// Y - i(sigma + X sigma X^T).
CMatrix cocp_matrix(const GaussianChannel& c);

/// Smallest eigenvalue of the real embedding of a Hermitian matrix.
double embedded_min_eig(const CMatrix& h);
/// PSD predicate evaluated through the real embedding.
bool embedded_psd(const CMatrix& h, double tol_psd = kDefaultTolPsd);

bool is_valid(const GaussianChannel& c, double tol_psd = kDefaultTolPsd);
bool is_cocp(const GaussianChannel& c, double tol_psd = kDefaultTolPsd);
/// Entanglement breaking iff Y = N + M with M >= i sigma, N >= i X sigma X^T.
sdp::GaussianSplit is_eb(const GaussianChannel& c, const sdp::SolverOptions& opts = {});

/// C2 o C1: X = X2 X1, Y = X2 Y1 X2^T + Y2. Throws ModeMismatch.
GaussianChannel compose(const GaussianChannel& c2, const GaussianChannel& c1);

struct Ppt2Witness {
  RMatrix n;  // X2 Y1 X2^T
  RMatrix m;  // Y2
  double n_margin = 0.0;  // min eig of N - i X sigma X^T, X = X2 X1
  double m_margin = 0.0;  // min eig of M - i sigma
  bool verified = false;
};

/// Split of C2 o C1 for two valid coCP channels. Throws PreconditionFailed
/// if either channel is invalid or not coCP.
Ppt2Witness ppt2_witness(const GaussianChannel& c2, const GaussianChannel& c1,
                         double tol_psd = kDefaultTolPsd);

/// X uniform in [-1, 1]; Y = A A^T + lambda I with A uniform in [-1, 1] and
/// lambda the smallest shift giving validity and coCP conditions a minimum
/// eigenvalue of at least 0.01.
GaussianChannel random_cocp_channel(int n, std::uint64_t seed);

}  // namespace ebkit
