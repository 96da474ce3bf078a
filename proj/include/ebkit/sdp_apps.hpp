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
#include <optional>
#include <string>

#include "ebkit/choi.hpp"
#include "ebkit/sdp.hpp"
#include "json.hpp"

namespace ebkit::sdp {

struct Decomposition {
  SdpResult sdp;
  /// C_P = cp_part + Gamma_B(cocp_part) when feasible.
  CMatrix cp_part;
  CMatrix cocp_part;
  /// Hermitian W with W >= 0, Gamma_B(W) >= 0 and tr(W C_P) < 0 when the
  /// solver certified infeasibility. Checked here, independently of the solver.
  CMatrix ppt_witness;
  double witness_value = 0.0;  // tr(W C_P) / |W|_2
  bool witness_verified = false;
};

/// Is P = T1 + theta o T2 with T1, T2 completely positive?
Decomposition decomposability_check(const QuantumMap& p, const SolverOptions& opts = {});

struct GaussianSplit {
  SdpResult sdp;
  RMatrix n;  // N >= i X sigma X^T
  RMatrix m;  // M >= i sigma
};

/// Searches real symmetric N, M with N + M = Y, M - i sigma >= 0 and
/// N - i X sigma X^T >= 0.
GaussianSplit gaussian_eb_split(const RMatrix& y, const RMatrix& x, const SolverOptions& opts = {});

struct SearchOptions {
  int restarts = 16;
  int max_rounds = 60;
  double stall_tolerance = 1e-10;
  int stall_rounds = 5;
  double success_value = -1e-6;
  std::uint64_t seed = 1;
  double tol_psd = kDefaultTolPsd;
  SolverOptions solver;
};

struct SearchReport {
  /// Smallest eigenvalue of C_{P o T} over all rounds and restarts.
  double best_value = 0.0;
  /// A CP and coCP map with min_eig(C_{P o T}) < 0, independently verified.
  bool not_cp_verified = false;
  std::optional<QuantumMap> t;
  CVector witness;
  /// "not-run", "decomposable", "non-decomposable" or "inconclusive". The
  /// second is only emitted with a verified PPT witness.
  std::string decomposability = "not-run";
  std::optional<Decomposition> decomposition;
  nlohmann::json trace;
};

/// Alternating search for a CP and coCP map T on M_d (d = P.din) making
/// P o T not completely positive: for fixed psi the SDP
///   min <psi|(id (x) P)(C_T)|psi>  s.t.  C_T >= 0, Gamma_B(C_T) >= 0, tr C_T = d,
/// then psi is replaced by the lowest eigenvector of (id (x) P)(C_T).
/// A negative result is passed to decomposability_check(P o T).
SearchReport counterexample_search(const QuantumMap& p, const SearchOptions& opts = {});

}  // namespace ebkit::sdp
