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
#include <functional>
#include <vector>

#include "ebkit/linalg.hpp"

namespace ebkit {

/// A linear map M_din -> M_dout, stored as its Choi matrix
/// C = sum_ij |i><j| (x) L(|i><j|) on C^din (x) C^dout.
class QuantumMap {
 public:
  QuantumMap(int din, int dout, CMatrix choi);

  int din() const { return din_; }
  int dout() const { return dout_; }
  BipartiteDims dims() const { return {din_, dout_}; }
  const CMatrix& choi() const { return choi_; }

  CMatrix operator()(const CMatrix& x) const;

  /// Kraus operators (dout x din) from the eigendecomposition of the Choi
  /// matrix. Eigenvalues below -tol_psd * |C| raise NotPSD; tiny ones are
  /// dropped.
  std::vector<CMatrix> kraus(double tol_psd = kDefaultTolPsd) const;

 private:
  int din_;
  int dout_;
  CMatrix choi_;
};

using MatrixAction = std::function<CMatrix(const CMatrix&)>;

/// Builds the Choi matrix by applying `action` to matrix units, then
/// spot-checks linearity on random inputs (LinearityViolation above 1e-8).
QuantumMap choi_from_action(const MatrixAction& action, int din, int dout,
                            std::uint64_t seed = 0x9e3779b97f4a7c15ULL);

QuantumMap map_from_kraus(const std::vector<CMatrix>& ops);

/// T(X) = Tr_A[(X^T (x) I) C_T].
CMatrix apply(const QuantumMap& t, const CMatrix& x);

/// T2 o T1.
QuantumMap compose(const QuantumMap& t2, const QuantumMap& t1);

/// Hilbert-Schmidt adjoint: Tr[A^dag T(B)] = Tr[T*(A)^dag B].
QuantumMap adjoint(const QuantumMap& t);

/// T1 (x) T2 : M_{in1 in2} -> M_{out1 out2}. The Choi matrix is ordered
/// (in1, in2 ; out1, out2).
QuantumMap tensor(const QuantumMap& t1, const QuantumMap& t2);

QuantumMap scale(const QuantumMap& t, double factor);
QuantumMap add(const QuantumMap& a, const QuantumMap& b);

/// theta o T (transpose on the output).
QuantumMap transpose_output(const QuantumMap& t);
/// T o theta (transpose on the input).
QuantumMap transpose_input(const QuantumMap& t);

bool is_cp(const QuantumMap& t, double tol = kDefaultTolPsd);
bool is_cocp(const QuantumMap& t, double tol = kDefaultTolPsd);

/// Number of singular values of realign(C_T) above tol * (largest).
int operator_schmidt_rank(const QuantumMap& t, double tol = 1e-8);

/// (id_k (x) T)(X) for X on C^k (x) C^din.
CMatrix apply_local(const QuantumMap& t, const CMatrix& x, int ancilla_dim);

/// The dout^2 x din^2 matrix of T acting on row-major vectorized inputs.
CMatrix superoperator(const QuantumMap& t);

/// Switch map on M_d (x) M_2: the |1><1| sector is sent through T1 into the
/// |2><2| sector and the |2><2| sector through T2 into |1><1|; coherences
/// between sectors are discarded. Qubit labels 1, 2 are basis indices 0, 1.
QuantumMap switch_map(const QuantumMap& t1, const QuantumMap& t2);

QuantumMap identity_map(int d);
QuantumMap transposition_map(int d);
/// X -> Tr[X] I_d.
QuantumMap depolarizing_map(int d);
/// Ad_A(X) = A X A^dag for A: C^din -> C^dout.
QuantumMap conjugation_map(const CMatrix& a);

}  // namespace ebkit
