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

#include "ebkit/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ebkit/errors.hpp"
#include "ebkit/random.hpp"

namespace ebkit {

namespace {

constexpr double kWitnessThreshold = -1e-9;
constexpr double kBallRadius = 0.5;
constexpr double kBallSlack = 1e-9;

bool low_dimensional(BipartiteDims d) {
  return (d.dA == 2 && (d.dB == 2 || d.dB == 3)) || (d.dA == 3 && d.dB == 2) || d.dA == 1 ||
         d.dB == 1;
}

CMatrix hermitian_choi(const QuantumMap& t) {
  if (!is_hermitian(t.choi(), 1e-8)) {
    throw Error(ErrorCode::NotHermitian, "Choi matrix is not Hermitian");
  }
  return 0.5 * (t.choi() + t.choi().adjoint());
}

// Random din x k matrix with orthonormal columns.
CMatrix random_isometry(int d, int k, Rng& rng) {
  Eigen::HouseholderQR<CMatrix> qr(random_ginibre(d, k, rng));
  return qr.householderQ() * CMatrix::Identity(d, k);
}

double expectation(const CMatrix& c, const CVector& psi) {
  return (psi.adjoint() * c * psi)(0, 0).real();
}

nlohmann::json vector_json(const RVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

BipartiteState::BipartiteState(CMatrix mat, BipartiteDims dims, double tol_psd)
    : mat_(std::move(mat)), dims_(dims) {
  if (dims.dA < 1 || dims.dB < 1 || mat_.rows() != dims.total() || mat_.cols() != dims.total()) {
    throw Error(ErrorCode::DimMismatch, "BipartiteState: matrix size does not match dims");
  }
  require_valid(mat_, "BipartiteState");
  if (!is_hermitian(mat_, kDefaultTolHermitian)) {
    throw Error(ErrorCode::NotHermitian, "BipartiteState: matrix not Hermitian");
  }
  mat_ = 0.5 * (mat_ + mat_.adjoint()).eval();
  if (!is_psd(mat_, tol_psd)) throw Error(ErrorCode::NotPSD, "BipartiteState: matrix not PSD");
}

const char* eb_status_name(EbStatus s) {
  switch (s) {
    case EbStatus::EbCertified: return "EB-certified";
    case EbStatus::NotEbCertified: return "notEB-certified";
    case EbStatus::Unknown: return "unknown";
  }
  return "unknown";
}

bool is_ppt_state(const BipartiteState& x, double tol_psd) {
  return is_psd(partial_transpose(x.mat(), x.dims(), Factor::A), tol_psd);
}

EbVerdict sep_decision_low_dim(const BipartiteState& x, double tol_psd) {
  const BipartiteDims d = x.dims();
  if (!((d.dA == 2 && (d.dB == 2 || d.dB == 3)) || (d.dA == 3 && d.dB == 2))) {
    throw Error(ErrorCode::DimOutOfRange, "sep_decision_low_dim: needs 2x2, 2x3 or 3x2");
  }
  const double lmin = min_eig(partial_transpose(x.mat(), d, Factor::A));
  EbVerdict v;
  const bool ppt = is_ppt_state(x, tol_psd);
  v.status = ppt ? EbStatus::EbCertified : EbStatus::NotEbCertified;
  v.evidence = {ppt ? "ppt-exact-low-dimension" : "npt", {{"min_eig_partial_transpose", lmin}}};
  return v;
}

bool realignment_criterion(const BipartiteState& x) {
  const double tr = x.mat().trace().real();
  if (tr <= 0.0) return true;
  return trace_norm(realign(x.mat() / tr, x.dims())) <= 1.0 + 1e-9;
}

double entangled_fraction(const BipartiteState& x) {
  const BipartiteDims dims = x.dims();
  if (dims.dA != dims.dB) {
    throw Error(ErrorCode::DimMismatch, "entangled_fraction: factors must have equal dimension");
  }
  const double tr = x.mat().trace().real();
  if (tr <= 0.0) return 0.0;
  const CVector omega = max_entangled_vector(dims.dA);
  return expectation(x.mat(), omega) / (dims.dA * tr);
}

int sn_lower_fidelity(const BipartiteState& x) {
  const double v = x.dims().dA * entangled_fraction(x);
  return std::max(1, static_cast<int>(std::ceil(v - 1e-12)));
}

std::optional<int> sn_upper_pt_invariant(const BipartiteState& x, double tol) {
  const BipartiteDims dims = x.dims();
  if (dims.dA > dims.dB) {
    throw Error(ErrorCode::PreconditionFailed, "sn_upper_pt_invariant: needs dA <= dB");
  }
  const double dev = max_abs(partial_transpose(x.mat(), dims, Factor::A) - x.mat());
  if (dev <= tol * max_abs(x.mat())) return std::max(1, dims.dA - 1);
  return std::nullopt;
}

SnVerdict sn_bounds(const BipartiteState& x, double tol_psd) {
  const BipartiteDims dims = x.dims();
  SnVerdict v;
  v.upper = std::min(dims.dA, dims.dB);
  v.certificates.push_back({"dimension", {{"upper", v.upper}}});
  if (dims.dA == dims.dB) {
    v.lower = sn_lower_fidelity(x);
    v.certificates.push_back({"fidelity-witness", {{"F", entangled_fraction(x)}, {"lower", v.lower}}});
  }
  if (dims.dA <= dims.dB) {
    if (const auto u = sn_upper_pt_invariant(x)) {
      v.upper = std::min(v.upper, *u);
      v.certificates.push_back({"pt-invariant", {{"upper", *u}}});
    }
  }
  if (low_dimensional(dims) && is_ppt_state(x, tol_psd)) {
    v.upper = 1;
    v.certificates.push_back({"ppt-exact-low-dimension", {{"upper", 1}}});
  }
  v.upper = std::max(v.upper, 1);
  return v;
}

BipartiteState subblock(const BipartiteState& x, const std::vector<int>& indices) {
  const BipartiteDims dims = x.dims();
  const int m = static_cast<int>(indices.size());
  if (m < 1) throw Error(ErrorCode::IndexOutOfRange, "subblock: empty index set");
  std::vector<bool> seen(dims.dA, false);
  for (int i : indices) {
    if (i < 0 || i >= dims.dA || seen[i]) {
      throw Error(ErrorCode::IndexOutOfRange, "subblock: indices must be distinct and in range");
    }
    seen[i] = true;
  }
  const int db = dims.dB;
  CMatrix y(m * db, m * db);
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < m; ++t)
      y.block(s * db, t * db, db, db) = x.mat().block(indices[s] * db, indices[t] * db, db, db);
  return BipartiteState(y, {m, db});
}

SubblockAudit subblock_sn_audit(const BipartiteState& x, int l) {
  const BipartiteDims dims = x.dims();
  if (dims.dA > dims.dB) throw Error(ErrorCode::PreconditionFailed, "subblock_sn_audit: needs dA <= dB");
  const int lower = dims.dA == dims.dB ? sn_lower_fidelity(x) : 1;
  if (l < 1 || l > lower) {
    throw Error(ErrorCode::PreconditionFailed, "subblock_sn_audit: need 1 <= l <= SN lower bound");
  }
  SubblockAudit audit;
  audit.l = l;
  audit.subset_size = dims.dA - l + 2;
  audit.implied_lower = std::max(1, lower - l + 2);
  if (audit.subset_size > dims.dA) return audit;

  std::vector<bool> pick(dims.dA, false);
  std::fill(pick.begin(), pick.begin() + audit.subset_size, true);
  do {
    SubblockEntry e;
    for (int i = 0; i < dims.dA; ++i)
      if (pick[i]) e.indices.push_back(i);
    const BipartiteState y = subblock(x, e.indices);
    e.npt = !is_ppt_state(y);
    if (e.npt) {
      e.verdict = "NPT";
    } else if (low_dimensional(y.dims())) {
      e.verdict = "certified-separable";
    } else {
      e.verdict = "unknown";
    }
    if (!e.npt) audit.all_npt = false;
    if (audit.implied_lower >= 2 && e.verdict == "certified-separable") audit.consistent = false;
    audit.entries.push_back(std::move(e));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return audit;
}

bool verify_k_witness(const QuantumMap& t, const CVector& psi, int k) {
  const double nrm = psi.norm();
  if (!(nrm > 0.0)) return false;
  const CVector u = psi / nrm;
  const RVector s = schmidt_coefficients(u, t.dims());
  if (k < s.size() && s(k) > 1e-10) return false;
  return expectation(hermitian_choi(t), u) < kWitnessThreshold;
}

std::optional<CVector> k_positivity_falsify(const QuantumMap& t, int k, int restarts,
                                            int iterations, std::uint64_t seed) {
  const int din = t.din(), dout = t.dout();
  if (k < 1 || k > std::min(din, dout)) {
    throw Error(ErrorCode::DomainError, "k_positivity_falsify: need 1 <= k <= min(din, dout)");
  }
  const CMatrix c = hermitian_choi(t);
  if (k == std::min(din, dout)) {
    const EigenDecomposition e = eig_hermitian(c, 1e-8);
    if (e.values(0) < kWitnessThreshold) {
      const CVector psi = e.vectors.col(0);
      if (verify_k_witness(t, psi, k)) return psi;
    }
    return std::nullopt;
  }
  const CMatrix id_in = CMatrix::Identity(din, din), id_out = CMatrix::Identity(dout, dout);
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    CMatrix v = random_isometry(dout, k, rng);
    double prev = std::numeric_limits<double>::infinity();
    CVector psi;
    for (int it = 0; it < iterations; ++it) {
      // Output side fixed: psi in C^din (x) range(V).
      const CMatrix iv = kron(id_in, v);
      EigenDecomposition e = eig_hermitian(iv.adjoint() * c * iv, 1e-8);
      psi = iv * e.vectors.col(0);
      Eigen::JacobiSVD<CMatrix> svd(coefficient_matrix(psi, t.dims()), Eigen::ComputeFullU);
      const CMatrix u = svd.matrixU().leftCols(k);
      // Input side fixed: psi in range(U) (x) C^dout.
      const CMatrix ui = kron(u, id_out);
      e = eig_hermitian(ui.adjoint() * c * ui, 1e-8);
      psi = ui * e.vectors.col(0);
      const double value = e.values(0);
      Eigen::JacobiSVD<CMatrix> svd2(coefficient_matrix(psi, t.dims()), Eigen::ComputeFullV);
      v = svd2.matrixV().leftCols(k).conjugate();
      if (value < kWitnessThreshold && verify_k_witness(t, psi, k)) return CVector(psi / psi.norm());
      if (prev - value < 1e-14) break;
      prev = value;
    }
  }
  return std::nullopt;
}

double ball_deviation_norm(const QuantumMap& p, int restarts, std::uint64_t seed) {
  const int d = p.din();
  if (p.dout() != d) throw Error(ErrorCode::DimMismatch, "ball_deviation_norm: map must be square");
  const QuantumMap delta = add(p, scale(depolarizing_map(d), -1.0));
  const QuantumMap delta_adj = adjoint(delta);
  double best = 0.0;
  auto top_pair = [&](const CMatrix& u, CVector& a, CVector& b) {
    Eigen::JacobiSVD<CMatrix> svd(ebkit::apply(delta, u), Eigen::ComputeFullU | Eigen::ComputeFullV);
    a = svd.matrixU().col(0);
    b = svd.matrixV().col(0);
    return svd.singularValues()(0);
  };
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    CMatrix u = random_unitary(d, rng);
    CVector a, b;
    double prev = -1.0;
    for (int it = 0; it < 200; ++it) {
      const double s = top_pair(u, a, b);
      best = std::max(best, s);
      if (s - prev < 1e-15) break;
      prev = s;
      // U maximizing |tr(K^dag U)| for K = Delta^*(a b^dag) is the polar factor of K.
      const CMatrix k = ebkit::apply(delta_adj, CMatrix(a * b.adjoint()));
      Eigen::JacobiSVD<CMatrix> ks(k, Eigen::ComputeFullU | Eigen::ComputeFullV);
      u = ks.matrixU() * ks.matrixV().adjoint();
    }
  }
  Rng rng(derive_seed(seed, 0xba11ULL));
  for (int s = 0; s < 256; ++s) {
    const CMatrix u = random_unitary(d, rng);
    best = std::max(best, op_norm(ebkit::apply(delta, u)));
  }
  return best;
}

bool two_eb_ball_certificate(const QuantumMap& p, int restarts, std::uint64_t seed) {
  return ball_deviation_norm(p, restarts, seed) <= kBallRadius + kBallSlack;
}

bool johnston_block_check(const CMatrix& rho, const CMatrix& x, const CMatrix& sigma,
                          double tol_psd) {
  const Eigen::Index d = rho.rows();
  if (rho.cols() != d || sigma.rows() != d || sigma.cols() != d || x.rows() != d || x.cols() != d) {
    throw Error(ErrorCode::DimMismatch, "johnston_block_check: blocks must be d x d");
  }
  CMatrix block(2 * d, 2 * d);
  block << rho, x, x.adjoint(), sigma;
  if (!is_hermitian(block, 1e-10) || !is_psd(0.5 * (block + block.adjoint()), tol_psd)) {
    throw Error(ErrorCode::NotPSD, "johnston_block_check: block matrix not PSD");
  }
  const double nx = op_norm(x);
  const double lr = min_eig(0.5 * (rho + rho.adjoint()));
  const double ls = min_eig(0.5 * (sigma + sigma.adjoint()));
  return nx * nx <= std::max(0.0, lr) * std::max(0.0, ls) + 1e-14 * std::max(1.0, nx * nx);
}

RankCertificate two_eb_rank_certificate(const QuantumMap& t, std::uint64_t seed) {
  RankCertificate rc;
  rc.operator_schmidt_rank = operator_schmidt_rank(t);
  if (is_cp(t)) {
    rc.positivity_evidence = "cp";
  } else {
    const int k = std::min({2, t.din(), t.dout()});
    rc.two_positivity_witness = k_positivity_falsify(t, k, 32, 200, seed).has_value();
    rc.positivity_evidence = "heuristic-2-positivity";
  }
  rc.certified = rc.operator_schmidt_rank <= 3 && !rc.two_positivity_witness;
  return rc;
}

EbVerdict two_eb_d3_certificate(const QuantumMap& t, std::uint64_t seed) {
  if (t.din() != 3 || t.dout() != 3) {
    throw Error(ErrorCode::DimOutOfRange, "two_eb_d3_certificate: needs a map on M_3");
  }
  EbVerdict v;
  const double cp = min_eig(hermitian_choi(t), 1e-8);
  const double cocp = min_eig(hermitian_choi(transpose_output(t)), 1e-8);
  if (is_cp(t) && is_cocp(t)) {
    v.status = EbStatus::EbCertified;
    v.evidence = {"cp-and-cocp", {{"min_eig_choi", cp}, {"min_eig_choi_pt", cocp}, {"sense", "2-EB"}}};
    return v;
  }
  for (int side = 0; side < 2; ++side) {
    const QuantumMap m = side == 0 ? t : transpose_output(t);
    if (const auto w = k_positivity_falsify(m, 2, 32, 200, seed)) {
      v.status = EbStatus::NotEbCertified;
      v.evidence = {side == 0 ? "2-positivity-witness" : "2-copositivity-witness",
                    {{"value", expectation(hermitian_choi(m), *w)},
                     {"schmidt_coefficients", vector_json(schmidt_coefficients(*w, m.dims()))},
                     {"sense", "2-EB"}}};
      return v;
    }
  }
  v.status = EbStatus::Unknown;
  v.evidence = {"no-witness-found", {{"min_eig_choi", cp}, {"min_eig_choi_pt", cocp}}};
  return v;
}

bool d4_ptinv_2eb_certificate(const QuantumMap& s, const QuantumMap& t, double tol) {
  for (const QuantumMap* m : {&s, &t}) {
    if (m->din() != 4 || m->dout() != 4) {
      throw Error(ErrorCode::DimOutOfRange, "d4_ptinv_2eb_certificate: needs maps on M_4");
    }
  }
  if (!is_cp(t) || !is_cocp(t) || !is_cp(s)) return false;
  const double scale = std::max(1.0, max_abs(s.choi()));
  const double out_dev = max_abs(partial_transpose(s.choi(), s.dims(), Factor::B) - s.choi());
  const double in_dev = max_abs(partial_transpose(s.choi(), s.dims(), Factor::A) - s.choi());
  return std::min(out_dev, in_dev) <= tol * scale;
}

int sn_trim_bound(int l, int n) {
  if (l < 1 || n < 1) throw Error(ErrorCode::DomainError, "sn_trim_bound: need l, n >= 1");
  return std::max(l - n + 1, 1);
}

int iteration_count(int d, int n) {
  if (d < 2 || n < 2 || n > d) throw Error(ErrorCode::DomainError, "iteration_count: need d >= 2, 2 <= n <= d");
  return (d - 1 + n - 2) / (n - 1);
}

AltIterationBound alt_iteration_bound(int d, int k) {
  if (k < 1 || k > d - 1 || k > 30) {
    throw Error(ErrorCode::DomainError, "alt_iteration_bound: need 1 <= k <= d - 1");
  }
  return {(1 << k) - 1, d - k, true};
}

}  // namespace ebkit
