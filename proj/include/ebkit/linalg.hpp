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

// Dense complex kernels shared by every other module. Bipartite matrices on
// C^dA (x) C^dB use the row-major product index (i, a) -> i * dB + a.

#include <complex>

#include <Eigen/Dense>

namespace ebkit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Global default for "M >= 0" predicates: min_eig(M) >= -tol * max(1, |M|).
inline constexpr double kDefaultTolPsd = 1e-9;
/// Default relative Hermiticity tolerance for eigen-solvers.
inline constexpr double kDefaultTolHermitian = 1e-10;

enum class Factor { A, B };

struct BipartiteDims {
  int dA = 1;
  int dB = 1;

  int total() const { return dA * dB; }
  BipartiteDims swapped() const { return {dB, dA}; }
  bool operator==(const BipartiteDims&) const = default;
};

struct EigenDecomposition {
  RVector values;   // ascending
  CMatrix vectors;  // columns are the eigenvectors
};

/// Largest absolute entry.
double max_abs(const CMatrix& m);
/// Spectral norm (largest singular value).
double op_norm(const CMatrix& m);
/// Sum of singular values.
double trace_norm(const CMatrix& m);
RVector singular_values(const CMatrix& m);

bool all_finite(const CMatrix& m);
/// Throws DomainError when any entry is NaN/Inf or the matrix is empty.
void require_valid(const CMatrix& m, const char* what);

/// Relative test max|M - M^dag| <= tol * max|M|.
bool is_hermitian(const CMatrix& m, double tol = kDefaultTolHermitian);

/// Throws NotHermitian unless is_hermitian(m, tol).
EigenDecomposition eig_hermitian(const CMatrix& m,
                                 double tol = kDefaultTolHermitian);
RVector eigvals_hermitian(const CMatrix& m, double tol = kDefaultTolHermitian);
double min_eig(const CMatrix& m, double tol = kDefaultTolHermitian);

/// PSD test with the global tolerance convention.
bool is_psd(const CMatrix& m, double tol_psd = kDefaultTolPsd);
/// min_eig(m) / max(1, |m|); nonnegative iff PSD at zero tolerance.
double psd_margin(const CMatrix& m);

CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

CMatrix partial_transpose(const CMatrix& m, BipartiteDims dims, Factor which);
/// Traces out the `which` factor; the other factor survives.
CMatrix partial_trace(const CMatrix& m, BipartiteDims dims, Factor which);

/// R[(i*dA + j), (a*dB + b)] = M[(i*dB + a), (j*dB + b)], a dA^2 x dB^2
/// matrix. M = sum_k A_k (x) B_k maps to R = sum_k vec(A_k) vec(B_k)^T with
/// row-major vec, so the singular values of R are the operator Schmidt
/// coefficients of M.
CMatrix realign(const CMatrix& m, BipartiteDims dims);

/// Exact inverse of realign.
CMatrix unrealign(const CMatrix& r, BipartiteDims dims);

CVector basis_vector(int d, int i);
/// Unnormalized |Omega_d> = sum_i |i>|i>.
CVector max_entangled_vector(int d);
/// omega_d = |Omega_d><Omega_d|.
CMatrix max_entangled(int d);
/// Flip (swap) operator F_d on C^d (x) C^d.
CMatrix flip(int d);
/// Matrix unit |i><j| in M_d.
CMatrix matrix_unit(int d, int i, int j);

/// Reshape a vector on C^dA (x) C^dB into its dA x dB coefficient matrix.
CMatrix coefficient_matrix(const CVector& psi, BipartiteDims dims);
CVector vectorize_coefficients(const CMatrix& coeffs);

/// Schmidt coefficients (descending singular values of the coefficient matrix).
RVector schmidt_coefficients(const CVector& psi, BipartiteDims dims);
int schmidt_rank(const CVector& psi, BipartiteDims dims, double tol = 1e-10);

/// Positive square root, eigenvalues clipped at zero.
CMatrix psd_sqrt(const CMatrix& m);

}  // namespace ebkit
