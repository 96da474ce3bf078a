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

#include "ebkit/sdp_apps.hpp"

#include <cmath>
#include <limits>

#include "ebkit/errors.hpp"
#include "ebkit/gaussian.hpp"
#include "ebkit/random.hpp"

namespace ebkit::sdp {

namespace {

HermitianTerm identity_term(int block) {
  return {block, [](const CMatrix& g) { return g; }};
}

nlohmann::json complex_to_json(const CMatrix& m) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json rr = nlohmann::json::array(), ii = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ii.push_back(m(i, j).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

}  // namespace

Decomposition decomposability_check(const QuantumMap& p, const SolverOptions& opts) {
  const BipartiteDims dims = p.dims();
  const int n = dims.total();
  if (!is_hermitian(p.choi(), 1e-8)) {
    throw Error(ErrorCode::NotHermitian, "decomposability_check: Choi matrix not Hermitian");
  }
  const CMatrix target = 0.5 * (p.choi() + p.choi().adjoint());

  SdpProblem prob;
  const int b1 = prob.add_block("C1", n, true);
  const int b2 = prob.add_block("C2", n, true);
  const std::vector<HermitianTerm> terms = {
      identity_term(b1),
      {b2, [dims](const CMatrix& g) { return partial_transpose(g, dims, Factor::B); }}};
  add_hermitian_matrix_equality(prob, terms, target, HermitianPart::All);

  Decomposition out;
  out.sdp = solve(prob, opts);
  if (out.sdp.status == Status::Feasible) {
    out.cp_part = out.sdp.hermitian[b1];
    out.cocp_part = out.sdp.hermitian[b2];
  }
  if (out.sdp.status == Status::Infeasible && out.sdp.certificate) {
    const std::vector<HermitianBasisElement> basis = hermitian_basis(n, HermitianPart::All);
    CMatrix w = CMatrix::Zero(n, n);
    for (size_t i = 0; i < basis.size(); ++i) w += out.sdp.certificate->weights(i) * basis[i].g;
    w = 0.5 * (w + w.adjoint()).eval();
    const double wn = w.norm();
    if (wn > 0.0) {
      w /= wn;
      out.ppt_witness = w;
      out.witness_value = (w * target).trace().real();
      const double tol = opts.certificate_tol;
      out.witness_verified = min_eig(w, 1e-8) >= -tol &&
                             min_eig(partial_transpose(w, dims, Factor::B), 1e-8) >= -tol &&
                             out.witness_value < -10.0 * tol * std::max(1.0, max_abs(target));
    }
  }
  return out;
}

GaussianSplit gaussian_eb_split(const RMatrix& y, const RMatrix& x, const SolverOptions& opts) {
  const Eigen::Index dim = y.rows();
  if (dim < 2 || dim % 2 != 0 || y.cols() != dim || x.rows() != dim || x.cols() != dim) {
    throw Error(ErrorCode::DimMismatch, "gaussian_eb_split: X and Y must be 2n x 2n");
  }
  if ((y - y.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, y.cwiseAbs().maxCoeff())) {
    throw Error(ErrorCode::DomainError, "gaussian_eb_split: Y not symmetric");
  }
  const int d = static_cast<int>(dim);
  const RMatrix s = symplectic_form(d / 2);
  const RMatrix xsx = x * s * x.transpose();

  SdpProblem prob;
  const int bn = prob.add_block("N - iXsX^T", d, true);
  const int bm = prob.add_block("M - is", d, true);
  const CMatrix ysym = (0.5 * (y + y.transpose())).cast<Complex>();
  add_hermitian_matrix_equality(prob, {identity_term(bn), identity_term(bm)}, ysym,
                                HermitianPart::Real);
  const Complex i(0.0, 1.0);
  add_hermitian_matrix_equality(prob, {identity_term(bm)}, CMatrix(-i * s.cast<Complex>()),
                                HermitianPart::Imaginary);
  add_hermitian_matrix_equality(prob, {identity_term(bn)}, CMatrix(-i * xsx.cast<Complex>()),
                                HermitianPart::Imaginary);

  GaussianSplit out;
  out.sdp = solve(prob, opts);
  if (out.sdp.status == Status::Feasible) {
    out.n = out.sdp.hermitian[bn].real();
    out.m = out.sdp.hermitian[bm].real();
    out.n = 0.5 * (out.n + out.n.transpose()).eval();
    out.m = 0.5 * (out.m + out.m.transpose()).eval();
  }
  return out;
}

SearchReport counterexample_search(const QuantumMap& p, const SearchOptions& opts) {
  const int d = p.din();
  const int dout = p.dout();
  const BipartiteDims tdims{d, d};
  const QuantumMap p_adj = adjoint(p);

  SdpProblem prob;
  const int bt = prob.add_block("C_T", d * d, true);
  const int bw = prob.add_block("Gamma(C_T)", d * d, true);
  add_hermitian_matrix_equality(
      prob,
      {identity_term(bw),
       {bt, [tdims](const CMatrix& g) { return CMatrix(-partial_transpose(g, tdims, Factor::B)); }}},
      CMatrix::Zero(d * d, d * d), HermitianPart::All);
  prob.equalities.push_back(
      {{{bt, hermitian_functional(CMatrix::Identity(d * d, d * d))}}, static_cast<double>(d)});

  SearchReport report;
  report.best_value = std::numeric_limits<double>::infinity();
  report.trace = {{"op", "counterexample_search"},
                  {"formulation",
                   "seesaw (artifact choice): SDP over C_T for fixed psi, then lowest "
                   "eigenvector of (id (x) P)(C_T)"},
                  {"din", d},
                  {"dout", dout},
                  {"seed", opts.seed},
                  {"restarts", nlohmann::json::array()}};

  CMatrix best_ct;
  CVector best_psi;
  for (int r = 0; r < opts.restarts; ++r) {
    Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(r)));
    CVector psi = random_unit_vector(d * dout, rng);
    nlohmann::json rounds = nlohmann::json::array();
    double prev = std::numeric_limits<double>::infinity();
    int stall = 0;
    std::string stop = "round limit";
    for (int round = 0; round < opts.max_rounds; ++round) {
      const CMatrix g = apply_local(p_adj, psi * psi.adjoint(), d);
      prob.objective = {hermitian_functional(0.5 * (g + g.adjoint())),
                        RMatrix::Zero(2 * d * d, 2 * d * d)};
      const SdpResult res = solve(prob, opts.solver);
      if (res.status != Status::Feasible) {
        rounds.push_back({{"round", round}, {"sdp", status_name(res.status)}, {"message", res.message}});
        stop = "sdp " + std::string(status_name(res.status));
        break;
      }
      CMatrix ct = res.hermitian[bt];
      ct = 0.5 * (ct + ct.adjoint()).eval();
      const CMatrix out = apply_local(p, ct, d);
      const EigenDecomposition e = eig_hermitian(0.5 * (out + out.adjoint()), 1e-8);
      const double value = e.values(0);
      psi = e.vectors.col(0);
      rounds.push_back({{"round", round}, {"sdp_objective", res.objective}, {"min_eig", value}});
      if (value < report.best_value) {
        report.best_value = value;
        best_ct = ct;
        best_psi = psi;
      }
      if (value < opts.success_value) {
        stop = "negative value";
        break;
      }
      if (prev - value < opts.stall_tolerance) {
        if (++stall >= opts.stall_rounds) {
          stop = "stalled";
          break;
        }
      } else {
        stall = 0;
      }
      prev = value;
    }
    report.trace["restarts"].push_back({{"restart", r}, {"stop", stop}, {"rounds", rounds}});
    if (report.best_value < opts.success_value) break;
  }
  report.trace["best_value"] = report.best_value;

  if (best_ct.size() == 0) {
    report.trace["verdict"] = "no-sdp-solution";
    return report;
  }
  report.t = QuantumMap(d, d, best_ct);
  report.witness = best_psi;
  if (report.best_value < opts.success_value) {
    const bool t_ok = is_cp(*report.t, opts.tol_psd) && is_cocp(*report.t, opts.tol_psd);
    const QuantumMap pt = compose(p, *report.t);
    const double lmin = min_eig(pt.choi(), 1e-8);
    const double wval = (best_psi.adjoint() * pt.choi() * best_psi)(0, 0).real();
    report.not_cp_verified = t_ok && lmin < -1e-9 && wval < -1e-9;
    report.trace["not_cp_check"] = {{"t_cp_and_cocp", t_ok},
                                    {"min_eig_choi_PoT", lmin},
                                    {"witness_value", wval},
                                    {"verified", report.not_cp_verified}};
    report.trace["T_choi"] = complex_to_json(best_ct);
    if (report.not_cp_verified) {
      report.decomposition = decomposability_check(pt, opts.solver);
      const Decomposition& dec = *report.decomposition;
      if (dec.sdp.status == Status::Feasible) {
        report.decomposability = "decomposable";
      } else if (dec.sdp.status == Status::Infeasible && dec.witness_verified) {
        report.decomposability = "non-decomposable";
      } else {
        report.decomposability = "inconclusive";
      }
      report.trace["decomposability"] = {{"status", status_name(dec.sdp.status)},
                                         {"verdict", report.decomposability},
                                         {"message", dec.sdp.message},
                                         {"witness_verified", dec.witness_verified},
                                         {"witness_value", dec.witness_value}};
    }
  }
  report.trace["verdict"] =
      report.not_cp_verified ? "P o T not CP; decomposability " + report.decomposability
                             : "no verified negative value";
  return report;
}

}  // namespace ebkit::sdp
