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
#include <vector>

#include "ebkit/choi.hpp"
#include "ebkit/linalg.hpp"
#include "json.hpp"

namespace ebkit {

/// PSD matrix on C^dA (x) C^dB; need not be normalized.
class BipartiteState {
 public:
  /// Throws DimMismatch, NotHermitian (1e-10 relative) or NotPSD.
  BipartiteState(CMatrix mat, BipartiteDims dims, double tol_psd = kDefaultTolPsd);

  const CMatrix& mat() const { return mat_; }
  BipartiteDims dims() const { return dims_; }

 private:
  CMatrix mat_;
  BipartiteDims dims_;
};

struct Evidence {
  std::string name;
  nlohmann::json data;
};

struct SnVerdict {
  int lower = 1;
  int upper = 1;
  std::vector<Evidence> certificates;
};

enum class EbStatus { EbCertified, NotEbCertified, Unknown };
const char* eb_status_name(EbStatus s);

struct EbVerdict {
  EbStatus status = EbStatus::Unknown;
  Evidence evidence;
};

bool is_ppt_state(const BipartiteState& x, double tol_psd = kDefaultTolPsd);

/// Exact for 2 x 2, 2 x 3 and 3 x 2; throws DimOutOfRange otherwise.
EbVerdict sep_decision_low_dim(const BipartiteState& x, double tol_psd = kDefaultTolPsd);

/// Trace norm of the realigned, trace-normalized state is at most 1 + 1e-9.
bool realignment_criterion(const BipartiteState& x);

/// Normalized fidelity F = <Omega|X|Omega> / (d Tr X) with the maximally
/// entangled state; equal factor dimensions required (DimMismatch).
double entangled_fraction(const BipartiteState& x);
/// ceil(d F) floored at 1; values within 1e-12 of an integer round down.
int sn_lower_fidelity(const BipartiteState& x);

/// dA - 1 when (theta (x) id)(X) = X within tol. Requires dA <= dB.
std::optional<int> sn_upper_pt_invariant(const BipartiteState& x, double tol = 1e-9);

/// Combines the fidelity lower bound with the PT-invariance and low
/// dimensional upper bounds.
SnVerdict sn_bounds(const BipartiteState& x, double tol_psd = kDefaultTolPsd);

/// Principal compression sum_{s,t} |s><t| (x) X_{m_s m_t} onto the listed
/// first-factor indices (0-based, distinct). Throws IndexOutOfRange.
BipartiteState subblock(const BipartiteState& x, const std::vector<int>& indices);

struct SubblockEntry {
  std::vector<int> indices;
  bool npt = false;
  /// "NPT", "certified-separable" or "unknown".
  std::string verdict;
};

struct SubblockAudit {
  int l = 1;
  int subset_size = 0;
  /// Lower bound SN(X) - l + 2 implied for every sub-block (using the
  /// fidelity lower bound for SN(X)).
  int implied_lower = 1;
  std::vector<SubblockEntry> entries;
  /// False only if some sub-block is certified separable while the implied
  /// bound is at least 2.
  bool consistent = true;
  bool all_npt = true;
};

/// Checks every sub-block of size dA - l + 2. Requires dA <= dB and
/// 1 <= l <= sn_lower_fidelity(X) (PreconditionFailed).
SubblockAudit subblock_sn_audit(const BipartiteState& x, int l);

/// Alternating search for a unit vector psi of Schmidt rank <= k with
/// <psi|C_T|psi> < -1e-9. Absent means no violation was found.
std::optional<CVector> k_positivity_falsify(const QuantumMap& t, int k, int restarts = 32,
                                            int iterations = 200, std::uint64_t seed = 1);

/// Independent re-check of a k-positivity witness.
bool verify_k_witness(const QuantumMap& t, const CVector& psi, int k);

/// Largest |<a| (P(U) - Tr[U] I) |b>| found over unitaries U and unit a, b;
/// this is the induced operator-norm of X -> P(X) - Tr[X] I.
double ball_deviation_norm(const QuantumMap& p, int restarts = 64, std::uint64_t seed = 1);

/// ball_deviation_norm(P) <= 1/2 + 1e-9. Requires a square map.
bool two_eb_ball_certificate(const QuantumMap& p, int restarts = 64, std::uint64_t seed = 1);

/// |X|^2 <= lambda_min(rho) lambda_min(sigma) for the PSD block matrix
/// [[rho, X], [X^dag, sigma]]. Throws NotPSD otherwise.
bool johnston_block_check(const CMatrix& rho, const CMatrix& x, const CMatrix& sigma,
                          double tol_psd = kDefaultTolPsd);

struct RankCertificate {
  bool certified = false;
  int operator_schmidt_rank = 0;
  bool two_positivity_witness = false;
  /// Either "cp" (exact) or "heuristic-2-positivity".
  std::string positivity_evidence;
};

/// Operator Schmidt rank at most 3 and no 2-positivity violation found.
RankCertificate two_eb_rank_certificate(const QuantumMap& t, std::uint64_t seed = 1);

/// 2-entanglement breaking verdict for a map on M_3. Throws DimOutOfRange.
EbVerdict two_eb_d3_certificate(const QuantumMap& t, std::uint64_t seed = 1);

/// T CP and coCP, S CP, and S invariant under transposition on either side.
/// Throws DimOutOfRange unless both maps act on M_4.
bool d4_ptinv_2eb_certificate(const QuantumMap& s, const QuantumMap& t, double tol = 1e-9);

/// max(l - n + 1, 1).
int sn_trim_bound(int l, int n);
/// ceil((d - 1) / (n - 1)). Throws DomainError unless d >= 2, 2 <= n <= d.
int iteration_count(int d, int n);

struct AltIterationBound {
  int compositions = 1;
  int sn_bound = 1;
  /// Always true: the bound assumes SN(C_T) <= d - 1 for CP and coCP T.
  bool conjectural = true;
};
/// (2^k - 1, d - k). Throws DomainError unless 1 <= k <= d - 1.
AltIterationBound alt_iteration_bound(int d, int k);

struct SeparableDecomposition {
  std::vector<CMatrix> a;  // PSD factors on the first system
  std::vector<CMatrix> b;  // PSD factors on the second system
  double residual = 0.0;   // |X - sum a_i (x) b_i|_inf / |X|_inf
  std::string method;
};

struct SepOptions {
  int max_terms = 5000;
  int refit_every = 50;
  double target = 1e-7;
  std::uint64_t seed = 1;
  double tol_psd = kDefaultTolPsd;
};

/// Randomized search for X = sum_i A_i (x) B_i with PSD factors.
std::optional<SeparableDecomposition> heuristic_sep_certify(const BipartiteState& x,
                                                            const SepOptions& opts = {});

/// Residual and factor positivity of a decomposition, recomputed from scratch.
bool verify_separable_decomposition(const BipartiteState& x, const SeparableDecomposition& dec,
                                    double target = 1e-7, double tol_psd = kDefaultTolPsd);

}  // namespace ebkit
