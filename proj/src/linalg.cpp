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

#include "ebkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ebkit/errors.hpp"

namespace ebkit {

namespace {

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimMismatch,
                std::string(what) + ": matrix is not square");
  }
}

void require_dims(const CMatrix& m, BipartiteDims dims, const char* what) {
  require_square(m, what);
  if (dims.dA < 1 || dims.dB < 1 || m.rows() != dims.total()) {
    throw Error(ErrorCode::DimMismatch,
                std::string(what) + ": ambient dimension " +
                    std::to_string(m.rows()) + " != " +
                    std::to_string(dims.dA) + "*" + std::to_string(dims.dB));
  }
}

}  // namespace

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

RVector singular_values(const CMatrix& m) {
  if (m.size() == 0) return RVector();
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues();
}

double op_norm(const CMatrix& m) {
  RVector s = singular_values(m);
  return s.size() == 0 ? 0.0 : s(0);
}

double trace_norm(const CMatrix& m) { return singular_values(m).sum(); }

bool all_finite(const CMatrix& m) { return m.allFinite(); }

void require_valid(const CMatrix& m, const char* what) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw Error(ErrorCode::DomainError, std::string(what) + ": empty matrix");
  }
  if (!m.allFinite()) {
    throw Error(ErrorCode::DomainError,
                std::string(what) + ": non-finite entry");
  }
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = max_abs(m);
  return max_abs(m - m.adjoint()) <= tol * scale;
}

EigenDecomposition eig_hermitian(const CMatrix& m, double tol) {
  require_square(m, "eig_hermitian");
  if (!is_hermitian(m, tol)) {
    throw Error(ErrorCode::NotHermitian,
                "eig_hermitian: |M - M^dag| = " +
                    std::to_string(max_abs(m - m.adjoint())));
  }
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "eig_hermitian: no convergence");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RVector eigvals_hermitian(const CMatrix& m, double tol) {
  require_square(m, "eigvals_hermitian");
  if (!is_hermitian(m, tol)) {
    throw Error(ErrorCode::NotHermitian, "eigvals_hermitian");
  }
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double min_eig(const CMatrix& m, double tol) {
  return eigvals_hermitian(m, tol)(0);
}

double psd_margin(const CMatrix& m) {
  const RVector ev = eigvals_hermitian(m, 1e-8);
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return ev(0) / std::max(1.0, norm);
}

bool is_psd(const CMatrix& m, double tol_psd) {
  return psd_margin(m) >= -tol_psd;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

CMatrix partial_transpose(const CMatrix& m, BipartiteDims dims, Factor which) {
  require_dims(m, dims, "partial_transpose");
  const int dA = dims.dA, dB = dims.dB;
  CMatrix out(m.rows(), m.cols());
  for (int i = 0; i < dA; ++i) {
    for (int j = 0; j < dA; ++j) {
      for (int a = 0; a < dB; ++a) {
        for (int b = 0; b < dB; ++b) {
          if (which == Factor::A) {
            out(i * dB + a, j * dB + b) = m(j * dB + a, i * dB + b);
          } else {
            out(i * dB + a, j * dB + b) = m(i * dB + b, j * dB + a);
          }
        }
      }
    }
  }
  return out;
}

CMatrix partial_trace(const CMatrix& m, BipartiteDims dims, Factor which) {
  require_dims(m, dims, "partial_trace");
  const int dA = dims.dA, dB = dims.dB;
  if (which == Factor::B) {
    CMatrix out = CMatrix::Zero(dA, dA);
    for (int i = 0; i < dA; ++i)
      for (int j = 0; j < dA; ++j)
        for (int a = 0; a < dB; ++a) out(i, j) += m(i * dB + a, j * dB + a);
    return out;
  }
  CMatrix out = CMatrix::Zero(dB, dB);
  for (int i = 0; i < dA; ++i) out += m.block(i * dB, i * dB, dB, dB);
  return out;
}

CMatrix realign(const CMatrix& m, BipartiteDims dims) {
  require_dims(m, dims, "realign");
  const int dA = dims.dA, dB = dims.dB;
  CMatrix r(dA * dA, dB * dB);
  for (int i = 0; i < dA; ++i)
    for (int j = 0; j < dA; ++j)
      for (int a = 0; a < dB; ++a)
        for (int b = 0; b < dB; ++b)
          r(i * dA + j, a * dB + b) = m(i * dB + a, j * dB + b);
  return r;
}

CMatrix unrealign(const CMatrix& r, BipartiteDims dims) {
  const int dA = dims.dA, dB = dims.dB;
  if (r.rows() != dA * dA || r.cols() != dB * dB) {
    throw Error(ErrorCode::DimMismatch, "unrealign: shape mismatch");
  }
  CMatrix m(dA * dB, dA * dB);
  for (int i = 0; i < dA; ++i)
    for (int j = 0; j < dA; ++j)
      for (int a = 0; a < dB; ++a)
        for (int b = 0; b < dB; ++b)
          m(i * dB + a, j * dB + b) = r(i * dA + j, a * dB + b);
  return m;
}

CVector basis_vector(int d, int i) {
  CVector v = CVector::Zero(d);
  v(i) = 1.0;
  return v;
}

CVector max_entangled_vector(int d) {
  CVector v = CVector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0;
  return v;
}

CMatrix max_entangled(int d) {
  const CVector v = max_entangled_vector(d);
  return v * v.adjoint();
}

CMatrix flip(int d) {
  CMatrix f = CMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
  return f;
}

CMatrix matrix_unit(int d, int i, int j) {
  CMatrix e = CMatrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

CMatrix coefficient_matrix(const CVector& psi, BipartiteDims dims) {
  if (psi.size() != dims.total()) {
    throw Error(ErrorCode::DimMismatch, "coefficient_matrix");
  }
  CMatrix c(dims.dA, dims.dB);
  for (int i = 0; i < dims.dA; ++i)
    for (int a = 0; a < dims.dB; ++a) c(i, a) = psi(i * dims.dB + a);
  return c;
}

CVector vectorize_coefficients(const CMatrix& coeffs) {
  CVector v(coeffs.size());
  for (Eigen::Index i = 0; i < coeffs.rows(); ++i)
    for (Eigen::Index a = 0; a < coeffs.cols(); ++a)
      v(i * coeffs.cols() + a) = coeffs(i, a);
  return v;
}

RVector schmidt_coefficients(const CVector& psi, BipartiteDims dims) {
  return singular_values(coefficient_matrix(psi, dims));
}

int schmidt_rank(const CVector& psi, BipartiteDims dims, double tol) {
  const RVector s = schmidt_coefficients(psi, dims);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > tol * s(0)) ++rank;
  return rank;
}

CMatrix psd_sqrt(const CMatrix& m) {
  const EigenDecomposition e = eig_hermitian(m, 1e-8);
  const RVector root = e.values.cwiseMax(0.0).cwiseSqrt();
  return e.vectors * root.asDiagonal() * e.vectors.adjoint();
}

}  // namespace ebkit
