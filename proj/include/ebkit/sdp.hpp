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

// Small dense semidefinite programs:
//
//   minimize   sum_b <C_b, X_b>
//   subject to sum_b <A_ib, X_b> = rhs_i,   X_b >= 0 (real symmetric).
//
// Complex Hermitian blocks of dimension n are carried as real symmetric
// blocks of dimension 2n. A real PSD block Z = [[Z11, Z12], [Z21, Z22]]
// represents the Hermitian PSD matrix
//   H(Z) = (Z11 + Z22) / 2 + i (Z21 - Z12) / 2,
// and tr(G H(Z)) = <embed(G) / 2, Z> for every Hermitian G.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ebkit/linalg.hpp"

namespace ebkit::sdp {

struct BlockSpec {
  std::string name;
  int dim = 1;           // complex dimension when `hermitian`
  bool hermitian = false;

  int real_dim() const { return hermitian ? 2 * dim : dim; }
};

/// sum over terms of <coefficient, X_block> = rhs. Coefficients are real
/// symmetric and sized to the block's real dimension.
struct Equality {
  std::vector<std::pair<int, RMatrix>> terms;
  double rhs = 0.0;
};

struct SdpProblem {
  std::vector<BlockSpec> blocks;
  std::vector<Equality> equalities;
  /// One coefficient per block; empty means a pure feasibility problem.
  std::vector<RMatrix> objective;

  int add_block(const std::string& name, int dim, bool hermitian = false);
};

enum class Status { Feasible, Infeasible, Inconclusive };

const char* status_name(Status s);

/// Farkas alternative: weights w with sum_i w_i A_i >= 0 blockwise and
/// rhs . w < 0 rule out every feasible point.
struct InfeasibilityCertificate {
  RVector weights;
  std::vector<RMatrix> slack;  // sum_i w_i A_ib per block
  double rhs_value = 0.0;      // rhs . w, normalized so max(|slack|, |rhs.w|) = 1
  double min_slack_eig = 0.0;  // normalized likewise
  bool verified = false;
};

struct Residuals {
  double primal_infeasibility = 0.0;  // |A(X) - b| / (1 + |b|)
  double dual_infeasibility = 0.0;
  double relative_gap = 0.0;
  double min_block_margin = 0.0;  // smallest psd_margin over primal blocks
  double eigen_margin = 0.0;      // best achievable min-eigenvalue margin
  int iterations = 0;
};

struct SdpResult {
  Status status = Status::Inconclusive;
  std::vector<RMatrix> primal;       // per block, real symmetric
  std::vector<CMatrix> hermitian;    // per block; empty for real blocks
  RVector dual;
  double objective = 0.0;
  std::optional<InfeasibilityCertificate> certificate;
  Residuals residuals;
  std::string message;
};

struct SolverOptions {
  int max_iterations = 200;
  double gap_tol = 1e-9;
  double feas_tol = 1e-9;
  double tol_psd = kDefaultTolPsd;
  /// Primal residual bound for a feasible verdict.
  double residual_tol = 1e-7;
  /// Eigenvalue margin below which a feasibility problem counts as infeasible.
  double infeasible_margin = 1e-7;
  /// Slack PSD tolerance and separation threshold for certificates.
  double certificate_tol = 1e-8;
};

/// Primal-dual path following with Nesterov-Todd scaling and Mehrotra
/// predictor-corrector steps. Feasibility problems are solved as
/// "maximize the smallest eigenvalue margin" so that infeasibility comes with
/// a Farkas certificate from the dual.
SdpResult solve(const SdpProblem& problem, const SolverOptions& opts = {});

/// Independent check of a Farkas certificate against the original problem.
/// Fills slack, normalized rhs_value / min_slack_eig and verified.
InfeasibilityCertificate verify_certificate(const SdpProblem& problem,
                                            const RVector& weights,
                                            double tol = 1e-8);

/// Independent check of a primal point: residual and PSD margins.
Residuals check_primal(const SdpProblem& problem,
                       const std::vector<RMatrix>& primal);

/// [[Re M, -Im M], [Im M, Re M]].
RMatrix hermitian_to_real_embedding(const CMatrix& m);
/// H(Z) as described above; exact inverse of the embedding on its image.
CMatrix hermitian_from_real_block(const RMatrix& z);
/// Real coefficient representing X -> tr(G H(X)) on a Hermitian block.
RMatrix hermitian_functional(const CMatrix& g);

enum class HermitianPart { All, Real, Imaginary };

/// Hermitian basis of M_n used for matrix equalities: E_ii, then for i < j
/// the matrices picking Re H_ij and Im H_ij through tr(G H).
struct HermitianBasisElement {
  CMatrix g;
  int row = 0;
  int col = 0;
  HermitianPart part = HermitianPart::Real;
};
std::vector<HermitianBasisElement> hermitian_basis(int n, HermitianPart which);

/// One term L_k(H_k) of a matrix equality, described through the adjoint
/// action G -> L_k^*(G) on Hermitian test matrices.
struct HermitianTerm {
  int block = 0;
  std::function<CMatrix(const CMatrix&)> adjoint_action;
};

/// Adds sum_k L_k(H_k) = target entrywise (restricted to `which` parts).
void add_hermitian_matrix_equality(SdpProblem& problem,
                                   const std::vector<HermitianTerm>& terms,
                                   const CMatrix& target, HermitianPart which);

}  // namespace ebkit::sdp
