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

#include "ebkit/choi.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "ebkit/errors.hpp"

namespace ebkit {

namespace {

CMatrix random_complex(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

}  // namespace

QuantumMap::QuantumMap(int din, int dout, CMatrix choi)
    : din_(din), dout_(dout), choi_(std::move(choi)) {
  if (din_ < 1 || dout_ < 1) {
    throw Error(ErrorCode::DimMismatch, "QuantumMap: dimensions must be >= 1");
  }
  if (choi_.rows() != din_ * dout_ || choi_.cols() != din_ * dout_) {
    throw Error(ErrorCode::DimMismatch,
                "QuantumMap: Choi matrix must be " +
                    std::to_string(din_ * dout_) + " square");
  }
  if (!choi_.allFinite()) {
    throw Error(ErrorCode::DomainError, "QuantumMap: non-finite Choi entry");
  }
}

CMatrix QuantumMap::operator()(const CMatrix& x) const { return ebkit::apply(*this, x); }

std::vector<CMatrix> QuantumMap::kraus(double tol_psd) const {
  const EigenDecomposition e = eig_hermitian(choi_, 1e-8);
  const double norm = std::max(std::abs(e.values(0)),
                               std::abs(e.values(e.values.size() - 1)));
  if (e.values(0) < -tol_psd * std::max(1.0, norm)) {
    throw Error(ErrorCode::NotPSD, "kraus: map is not completely positive");
  }
  std::vector<CMatrix> ops;
  for (Eigen::Index k = e.values.size() - 1; k >= 0; --k) {
    if (e.values(k) <= 1e-14 * std::max(1.0, norm)) break;
    // Choi eigenvector v = sum_i |i> (x) K|i>, so K(a, i) = v(i * dout + a).
    const CVector v = std::sqrt(e.values(k)) * e.vectors.col(k);
    CMatrix op(dout_, din_);
    for (int i = 0; i < din_; ++i)
      for (int a = 0; a < dout_; ++a) op(a, i) = v(i * dout_ + a);
    ops.push_back(std::move(op));
  }
  return ops;
}

QuantumMap choi_from_action(const MatrixAction& action, int din, int dout,
                            std::uint64_t seed) {
  CMatrix choi = CMatrix::Zero(din * dout, din * dout);
  for (int i = 0; i < din; ++i) {
    for (int j = 0; j < din; ++j) {
      const CMatrix out = action(matrix_unit(din, i, j));
      if (out.rows() != dout || out.cols() != dout) {
        throw Error(ErrorCode::DimMismatch,
                    "choi_from_action: action output has wrong shape");
      }
      choi.block(i * dout, j * dout, dout, dout) = out;
    }
  }
  QuantumMap map(din, dout, std::move(choi));

  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 2; ++trial) {
    const CMatrix x = random_complex(din, din, rng);
    const CMatrix direct = action(x);
    const CMatrix via_choi = ebkit::apply(map, x);
    const double scale = std::max(1.0, max_abs(direct));
    if (max_abs(direct - via_choi) > 1e-8 * scale) {
      throw Error(ErrorCode::LinearityViolation,
                  "choi_from_action: action is not linear");
    }
  }
  return map;
}

QuantumMap map_from_kraus(const std::vector<CMatrix>& ops) {
  if (ops.empty()) {
    throw Error(ErrorCode::DomainError, "map_from_kraus: no operators");
  }
  const int dout = static_cast<int>(ops.front().rows());
  const int din = static_cast<int>(ops.front().cols());
  CMatrix choi = CMatrix::Zero(din * dout, din * dout);
  for (const CMatrix& k : ops) {
    if (k.rows() != dout || k.cols() != din) {
      throw Error(ErrorCode::DimMismatch, "map_from_kraus: ragged operators");
    }
    CVector v(din * dout);
    for (int i = 0; i < din; ++i)
      for (int a = 0; a < dout; ++a) v(i * dout + a) = k(a, i);
    choi += v * v.adjoint();
  }
  return QuantumMap(din, dout, std::move(choi));
}

CMatrix apply(const QuantumMap& t, const CMatrix& x) {
  const int din = t.din(), dout = t.dout();
  if (x.rows() != din || x.cols() != din) {
    throw Error(ErrorCode::DimMismatch, "apply: input must be din x din");
  }
  CMatrix out = CMatrix::Zero(dout, dout);
  const CMatrix& c = t.choi();
  for (int i = 0; i < din; ++i)
    for (int j = 0; j < din; ++j)
      if (x(i, j) != Complex(0.0))
        out += x(i, j) * c.block(i * dout, j * dout, dout, dout);
  return out;
}

CMatrix apply_local(const QuantumMap& t, const CMatrix& x, int ancilla_dim) {
  const int k = ancilla_dim, din = t.din(), dout = t.dout();
  if (x.rows() != k * din || x.cols() != k * din) {
    throw Error(ErrorCode::DimMismatch, "apply_local: input dimension");
  }
  CMatrix out(k * dout, k * dout);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      out.block(i * dout, j * dout, dout, dout) =
          ebkit::apply(t, x.block(i * din, j * din, din, din));
  return out;
}

QuantumMap compose(const QuantumMap& t2, const QuantumMap& t1) {
  if (t1.dout() != t2.din()) {
    throw Error(ErrorCode::DimMismatch, "compose: T1.dout != T2.din");
  }
  const int din = t1.din(), mid = t1.dout(), dout = t2.dout();
  CMatrix choi(din * dout, din * dout);
  for (int i = 0; i < din; ++i)
    for (int j = 0; j < din; ++j)
      choi.block(i * dout, j * dout, dout, dout) =
          ebkit::apply(t2, t1.choi().block(i * mid, j * mid, mid, mid));
  return QuantumMap(din, dout, std::move(choi));
}

QuantumMap adjoint(const QuantumMap& t) {
  const int din = t.din(), dout = t.dout();
  const CMatrix& c = t.choi();
  CMatrix out(din * dout, din * dout);
  for (int i = 0; i < din; ++i)
    for (int j = 0; j < din; ++j)
      for (int a = 0; a < dout; ++a)
        for (int b = 0; b < dout; ++b)
          out(a * din + i, b * din + j) = std::conj(c(i * dout + a, j * dout + b));
  return QuantumMap(dout, din, std::move(out));
}

QuantumMap tensor(const QuantumMap& t1, const QuantumMap& t2) {
  const int i1 = t1.din(), o1 = t1.dout(), i2 = t2.din(), o2 = t2.dout();
  const int din = i1 * i2, dout = o1 * o2;
  const CMatrix& c1 = t1.choi();
  const CMatrix& c2 = t2.choi();
  CMatrix out(din * dout, din * dout);
  for (int p1 = 0; p1 < i1; ++p1)
    for (int p2 = 0; p2 < i2; ++p2)
      for (int q1 = 0; q1 < i1; ++q1)
        for (int q2 = 0; q2 < i2; ++q2) {
          const int row_in = p1 * i2 + p2, col_in = q1 * i2 + q2;
          for (int a1 = 0; a1 < o1; ++a1)
            for (int a2 = 0; a2 < o2; ++a2)
              for (int b1 = 0; b1 < o1; ++b1)
                for (int b2 = 0; b2 < o2; ++b2) {
                  out(row_in * dout + a1 * o2 + a2, col_in * dout + b1 * o2 + b2) =
                      c1(p1 * o1 + a1, q1 * o1 + b1) *
                      c2(p2 * o2 + a2, q2 * o2 + b2);
                }
        }
  return QuantumMap(din, dout, std::move(out));
}

QuantumMap scale(const QuantumMap& t, double factor) {
  return QuantumMap(t.din(), t.dout(), factor * t.choi());
}

QuantumMap add(const QuantumMap& a, const QuantumMap& b) {
  if (a.din() != b.din() || a.dout() != b.dout()) {
    throw Error(ErrorCode::DimMismatch, "add: dimension mismatch");
  }
  return QuantumMap(a.din(), a.dout(), a.choi() + b.choi());
}

QuantumMap transpose_output(const QuantumMap& t) {
  return QuantumMap(t.din(), t.dout(),
                    partial_transpose(t.choi(), t.dims(), Factor::B));
}

QuantumMap transpose_input(const QuantumMap& t) {
  return QuantumMap(t.din(), t.dout(),
                    partial_transpose(t.choi(), t.dims(), Factor::A));
}

bool is_cp(const QuantumMap& t, double tol) {
  if (!is_hermitian(t.choi(), 1e-8)) {
    throw Error(ErrorCode::NotHermitian, "is_cp: Choi matrix not Hermitian");
  }
  return is_psd(t.choi(), tol);
}

bool is_cocp(const QuantumMap& t, double tol) {
  if (!is_hermitian(t.choi(), 1e-8)) {
    throw Error(ErrorCode::NotHermitian, "is_cocp: Choi matrix not Hermitian");
  }
  return is_psd(partial_transpose(t.choi(), t.dims(), Factor::B), tol);
}

int operator_schmidt_rank(const QuantumMap& t, double tol) {
  const RVector s = singular_values(realign(t.choi(), t.dims()));
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > tol * s(0)) ++rank;
  return rank;
}

CMatrix superoperator(const QuantumMap& t) {
  const int din = t.din(), dout = t.dout();
  CMatrix s(dout * dout, din * din);
  const CMatrix& c = t.choi();
  for (int i = 0; i < din; ++i)
    for (int j = 0; j < din; ++j)
      for (int a = 0; a < dout; ++a)
        for (int b = 0; b < dout; ++b)
          s(a * dout + b, i * din + j) = c(i * dout + a, j * dout + b);
  return s;
}

QuantumMap switch_map(const QuantumMap& t1, const QuantumMap& t2) {
  const int d = t1.din();
  if (t1.dout() != d || t2.din() != d || t2.dout() != d) {
    throw Error(ErrorCode::DimMismatch,
                "switch_map: T1 and T2 must both be maps M_d -> M_d");
  }
  const int n = 2 * d;
  auto sector = [d](const CMatrix& x, int k) {
    CMatrix s(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) s(i, j) = x(i * 2 + k, j * 2 + k);
    return s;
  };
  auto embed = [d, n](const CMatrix& y, int k) {
    CMatrix out = CMatrix::Zero(n, n);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out(i * 2 + k, j * 2 + k) = y(i, j);
    return out;
  };
  const MatrixAction action = [&](const CMatrix& x) -> CMatrix {
    return embed(ebkit::apply(t1, sector(x, 0)), 1) + embed(ebkit::apply(t2, sector(x, 1)), 0);
  };
  return choi_from_action(action, n, n);
}

QuantumMap identity_map(int d) { return QuantumMap(d, d, max_entangled(d)); }

QuantumMap transposition_map(int d) { return QuantumMap(d, d, flip(d)); }

QuantumMap depolarizing_map(int d) {
  return QuantumMap(d, d, CMatrix::Identity(d * d, d * d));
}

QuantumMap conjugation_map(const CMatrix& a) { return map_from_kraus({a}); }

}  // namespace ebkit
