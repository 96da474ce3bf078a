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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ebkit/errors.hpp"
#include "ebkit/sdp.hpp"

namespace ebkit::sdp {

namespace {

using Row = std::vector<std::pair<int, RMatrix>>;

// Standard form consumed by the interior-point core.
struct StdForm {
  std::vector<int> dims;
  std::vector<Row> rows;
  RVector b;
  std::vector<RMatrix> c;
};

struct IpmOutcome {
  std::vector<RMatrix> x;
  std::vector<RMatrix> z;
  RVector y;
  bool converged = false;
  int iterations = 0;
  double pobj = 0.0;
  double dobj = 0.0;
  double relgap = 0.0;
  double pinf = 0.0;
  double dinf = 0.0;
  std::string message;
};

double frob_inner(const RMatrix& a, const RMatrix& b) {
  return a.cwiseProduct(b).sum();
}

double inner(const std::vector<RMatrix>& a, const std::vector<RMatrix>& b) {
  double s = 0.0;
  for (size_t k = 0; k < a.size(); ++k) s += frob_inner(a[k], b[k]);
  return s;
}

double frob_norm(const std::vector<RMatrix>& a) { return std::sqrt(inner(a, a)); }

RVector a_op(const StdForm& p, const std::vector<RMatrix>& x) {
  RVector out(p.rows.size());
  for (size_t i = 0; i < p.rows.size(); ++i) {
    double s = 0.0;
    for (const auto& [blk, coeff] : p.rows[i]) s += frob_inner(coeff, x[blk]);
    out(i) = s;
  }
  return out;
}

std::vector<RMatrix> a_adj(const StdForm& p, const RVector& y) {
  std::vector<RMatrix> out;
  for (int d : p.dims) out.push_back(RMatrix::Zero(d, d));
  for (size_t i = 0; i < p.rows.size(); ++i)
    for (const auto& [blk, coeff] : p.rows[i]) out[blk] += y(i) * coeff;
  return out;
}

RMatrix sym(const RMatrix& m) { return 0.5 * (m + m.transpose()); }

// Largest alpha in (0, 1] with X + alpha dX >= 0, given X = L L^T.
double max_step(const RMatrix& l, const RMatrix& dx) {
  const auto tri = l.triangularView<Eigen::Lower>();
  const RMatrix t = tri.solve(tri.solve(dx).transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<RMatrix> es(sym(t), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  if (lmin >= 0.0) return 1.0;
  return std::min(1.0, -1.0 / lmin);
}

struct BlockScaling {
  RMatrix l;     // chol(X)
  RMatrix r;     // chol(Z)
  RMatrix g;     // W = G G^T
  RMatrix ginv;
  RMatrix w;
  RVector d;     // scaled X = scaled Z = diag(d)
};

bool compute_scaling(const RMatrix& x, const RMatrix& z, BlockScaling& s) {
  Eigen::LLT<RMatrix> lx(x), lz(z);
  if (lx.info() != Eigen::Success || lz.info() != Eigen::Success) return false;
  s.l = lx.matrixL();
  s.r = lz.matrixL();
  Eigen::JacobiSVD<RMatrix> svd(s.r.transpose() * s.l,
                                Eigen::ComputeFullU | Eigen::ComputeFullV);
  s.d = svd.singularValues();
  if (s.d.minCoeff() <= 0.0 || !s.d.allFinite()) return false;
  const RVector dinv_sqrt = s.d.cwiseSqrt().cwiseInverse();
  const RVector d_sqrt = s.d.cwiseSqrt();
  s.g = s.l * svd.matrixV() * dinv_sqrt.asDiagonal();
  const auto tri = s.l.triangularView<Eigen::Lower>();
  // G^{-1} = D^{1/2} V^T L^{-1}
  const RMatrix linv = tri.solve(RMatrix::Identity(x.rows(), x.cols()));
  s.ginv = d_sqrt.asDiagonal() * svd.matrixV().transpose() * linv;
  s.w = s.g * s.g.transpose();
  return true;
}

IpmOutcome run_ipm(const StdForm& p, const SolverOptions& o) {
  const int nb = static_cast<int>(p.dims.size());
  const int m = static_cast<int>(p.rows.size());
  int ntot = 0;
  for (int d : p.dims) ntot += d;

  IpmOutcome out;
  out.y = RVector::Zero(m);
  const double bnorm = p.b.norm();
  const double cnorm = frob_norm(p.c);

  for (int k = 0; k < nb; ++k) {
    const int n = p.dims[k];
    double amax = 0.0, ratio = 0.0;
    for (int i = 0; i < m; ++i)
      for (const auto& [blk, coeff] : p.rows[i])
        if (blk == k) {
          const double an = coeff.norm();
          amax = std::max(amax, an);
          ratio = std::max(ratio, (1.0 + std::abs(p.b(i))) / (1.0 + an));
        }
    const double xi = std::max({10.0, std::sqrt(double(n)), n * ratio});
    const double eta = std::max({10.0, std::sqrt(double(n)), amax, p.c[k].norm()});
    out.x.push_back(xi * RMatrix::Identity(n, n));
    out.z.push_back(eta * RMatrix::Identity(n, n));
  }

  std::vector<BlockScaling> sc(nb);
  for (int iter = 0; iter <= o.max_iterations; ++iter) {
    out.iterations = iter;
    const RVector rp = p.b - a_op(p, out.x);
    std::vector<RMatrix> rd = a_adj(p, out.y);
    for (int k = 0; k < nb; ++k) rd[k] = p.c[k] - out.z[k] - rd[k];
    out.pobj = inner(p.c, out.x);
    out.dobj = p.b.dot(out.y);
    const double gap = inner(out.x, out.z);
    const double mu = gap / ntot;
    out.relgap = std::max(gap, std::abs(out.pobj - out.dobj)) /
                 (1.0 + std::abs(out.pobj) + std::abs(out.dobj));
    out.pinf = rp.norm() / (1.0 + bnorm);
    out.dinf = frob_norm(rd) / (1.0 + cnorm);
    if (out.relgap < o.gap_tol && out.pinf < o.feas_tol && out.dinf < o.feas_tol) {
      out.converged = true;
      return out;
    }
    if (iter == o.max_iterations) break;

    bool ok = true;
    for (int k = 0; k < nb && ok; ++k) ok = compute_scaling(out.x[k], out.z[k], sc[k]);
    if (!ok) {
      out.message = "scaling failed (iterate lost definiteness)";
      return out;
    }

    // Schur complement M_ij = <A_i, W A_j W>.
    std::vector<std::vector<RMatrix>> waw(m, std::vector<RMatrix>(nb));
    for (int j = 0; j < m; ++j)
      for (const auto& [blk, coeff] : p.rows[j]) {
        RMatrix t = sc[blk].w * coeff * sc[blk].w;
        if (waw[j][blk].size() == 0) waw[j][blk] = std::move(t);
        else waw[j][blk] += t;
      }
    RMatrix schur = RMatrix::Zero(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        double s = 0.0;
        for (const auto& [blk, coeff] : p.rows[i])
          if (waw[j][blk].size() != 0) s += frob_inner(coeff, waw[j][blk]);
        schur(i, j) = schur(j, i) = s;
      }
    Eigen::LLT<RMatrix> schur_llt(schur);
    Eigen::LDLT<RMatrix> schur_ldlt;
    bool use_llt = schur_llt.info() == Eigen::Success;
    if (!use_llt) {
      const double ridge = 1e-14 * std::max(1.0, schur.diagonal().maxCoeff());
      schur_ldlt.compute(schur + ridge * RMatrix::Identity(m, m));
    }
    auto solve_schur = [&](const RVector& rhs) -> RVector {
      return use_llt ? RVector(schur_llt.solve(rhs)) : RVector(schur_ldlt.solve(rhs));
    };

    std::vector<RMatrix> wrdw(nb);
    for (int k = 0; k < nb; ++k) wrdw[k] = sc[k].w * rd[k] * sc[k].w;
    const RVector a_wrdw = a_op(p, wrdw);

    auto direction = [&](const std::vector<RMatrix>& h, std::vector<RMatrix>& dx,
                         RVector& dy, std::vector<RMatrix>& dz) {
      std::vector<RMatrix> rc(nb);
      for (int k = 0; k < nb; ++k) rc[k] = sc[k].g * h[k] * sc[k].g.transpose();
      dy = solve_schur(rp - a_op(p, rc) + a_wrdw);
      std::vector<RMatrix> ady = a_adj(p, dy);
      dz.resize(nb);
      dx.resize(nb);
      for (int k = 0; k < nb; ++k) {
        dz[k] = rd[k] - ady[k];
        dx[k] = sym(rc[k] - sc[k].w * dz[k] * sc[k].w);
      }
    };
    auto step_lengths = [&](const std::vector<RMatrix>& dx,
                            const std::vector<RMatrix>& dz, double& ap, double& ad) {
      ap = 1.0;
      ad = 1.0;
      for (int k = 0; k < nb; ++k) {
        ap = std::min(ap, max_step(sc[k].l, dx[k]));
        ad = std::min(ad, max_step(sc[k].r, dz[k]));
      }
    };

    // Predictor.
    std::vector<RMatrix> h(nb);
    for (int k = 0; k < nb; ++k) h[k] = -RMatrix(sc[k].d.asDiagonal());
    std::vector<RMatrix> dxa, dza;
    RVector dya;
    direction(h, dxa, dya, dza);
    double apa, ada;
    step_lengths(dxa, dza, apa, ada);
    double mu_aff = 0.0;
    for (int k = 0; k < nb; ++k)
      mu_aff += frob_inner(out.x[k] + apa * dxa[k], out.z[k] + ada * dza[k]);
    mu_aff /= ntot;
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    // Corrector.
    for (int k = 0; k < nb; ++k) {
      const RMatrix dxt = sc[k].ginv * dxa[k] * sc[k].ginv.transpose();
      const RMatrix dzt = sc[k].g.transpose() * dza[k] * sc[k].g;
      const RVector& d = sc[k].d;
      RMatrix rhs = -(dxt * dzt + dzt * dxt);
      for (Eigen::Index i = 0; i < d.size(); ++i)
        rhs(i, i) += 2.0 * sigma * mu - 2.0 * d(i) * d(i);
      for (Eigen::Index i = 0; i < d.size(); ++i)
        for (Eigen::Index j = 0; j < d.size(); ++j) rhs(i, j) /= d(i) + d(j);
      h[k] = sym(rhs);
    }
    std::vector<RMatrix> dx, dz;
    RVector dy;
    direction(h, dx, dy, dz);
    double ap, ad;
    step_lengths(dx, dz, ap, ad);
    const double gamma = 0.9 + 0.09 * std::min(ap, ad);
    ap = std::min(1.0, gamma * ap);
    ad = std::min(1.0, gamma * ad);
    if (!(ap > 0.0) || !(ad > 0.0) || !dy.allFinite()) {
      out.message = "step computation failed";
      return out;
    }
    for (int k = 0; k < nb; ++k) {
      out.x[k] = sym(out.x[k] + ap * dx[k]);
      out.z[k] = sym(out.z[k] + ad * dz[k]);
    }
    out.y += ad * dy;
    if (std::max(ap, ad) < 1e-10) {
      out.message = "stalled (step lengths vanished)";
      return out;
    }
  }
  out.message = "iteration limit reached";
  return out;
}

double real_psd_margin(const RMatrix& m) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(sym(m), Eigen::EigenvaluesOnly);
  const RVector& ev = es.eigenvalues();
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return ev(0) / std::max(1.0, norm);
}

double real_min_eig(const RMatrix& m) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(sym(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Problem rows merged per block and validated.
struct Prepared {
  std::vector<Row> rows;
  RVector rhs;
};

Prepared prepare(const SdpProblem& problem) {
  const int nb = static_cast<int>(problem.blocks.size());
  for (const BlockSpec& blk : problem.blocks) {
    if (blk.dim < 1) throw Error(ErrorCode::DomainError, "sdp: block dimension < 1");
  }
  Prepared out;
  out.rhs.resize(problem.equalities.size());
  for (size_t i = 0; i < problem.equalities.size(); ++i) {
    const Equality& eq = problem.equalities[i];
    std::vector<RMatrix> merged(nb);
    for (const auto& [blk, coeff] : eq.terms) {
      if (blk < 0 || blk >= nb) {
        throw Error(ErrorCode::IndexOutOfRange, "sdp: constraint block index");
      }
      const int n = problem.blocks[blk].real_dim();
      if (coeff.rows() != n || coeff.cols() != n) {
        throw Error(ErrorCode::DimMismatch, "sdp: coefficient size for block " +
                                                problem.blocks[blk].name);
      }
      if (!coeff.allFinite()) throw Error(ErrorCode::DomainError, "sdp: non-finite coefficient");
      if ((coeff - coeff.transpose()).cwiseAbs().maxCoeff() >
          1e-9 * std::max(1.0, coeff.cwiseAbs().maxCoeff())) {
        throw Error(ErrorCode::DomainError, "sdp: coefficient not symmetric");
      }
      if (merged[blk].size() == 0) merged[blk] = sym(coeff);
      else merged[blk] += sym(coeff);
    }
    Row row;
    for (int k = 0; k < nb; ++k)
      if (merged[k].size() != 0 && merged[k].cwiseAbs().maxCoeff() > 0.0)
        row.emplace_back(k, std::move(merged[k]));
    out.rows.push_back(std::move(row));
    out.rhs(i) = eq.rhs;
  }
  if (!problem.objective.empty()) {
    if (static_cast<int>(problem.objective.size()) != nb) {
      throw Error(ErrorCode::DimMismatch, "sdp: objective needs one matrix per block");
    }
    for (int k = 0; k < nb; ++k) {
      const int n = problem.blocks[k].real_dim();
      if (problem.objective[k].rows() != n || problem.objective[k].cols() != n) {
        throw Error(ErrorCode::DimMismatch, "sdp: objective size for block " +
                                                problem.blocks[k].name);
      }
    }
  }
  return out;
}

double row_norm(const Row& row) {
  double s = 0.0;
  for (const auto& term : row) s += term.second.squaredNorm();
  return std::sqrt(s);
}

void fill_hermitian(const SdpProblem& problem, SdpResult& result) {
  result.hermitian.assign(problem.blocks.size(), CMatrix());
  for (size_t k = 0; k < problem.blocks.size(); ++k)
    if (problem.blocks[k].hermitian && k < result.primal.size())
      result.hermitian[k] = hermitian_from_real_block(result.primal[k]);
}

SdpResult certificate_result(const SdpProblem& problem, const RVector& w,
                             const SolverOptions& o, const std::string& why) {
  SdpResult r;
  r.certificate = verify_certificate(problem, w, o.certificate_tol);
  r.status = r.certificate->verified ? Status::Infeasible : Status::Inconclusive;
  r.message = r.certificate->verified ? why : why + " (certificate failed verification)";
  return r;
}

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::Feasible: return "feasible";
    case Status::Infeasible: return "infeasible";
    case Status::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

int SdpProblem::add_block(const std::string& name, int dim, bool hermitian) {
  blocks.push_back({name, dim, hermitian});
  return static_cast<int>(blocks.size()) - 1;
}

InfeasibilityCertificate verify_certificate(const SdpProblem& problem,
                                            const RVector& weights, double tol) {
  const Prepared prep = prepare(problem);
  InfeasibilityCertificate cert;
  cert.weights = weights;
  const int nb = static_cast<int>(problem.blocks.size());
  if (weights.size() != static_cast<Eigen::Index>(prep.rows.size())) {
    throw Error(ErrorCode::DimMismatch, "verify_certificate: weight count");
  }
  for (int k = 0; k < nb; ++k) {
    const int n = problem.blocks[k].real_dim();
    cert.slack.push_back(RMatrix::Zero(n, n));
  }
  for (size_t i = 0; i < prep.rows.size(); ++i)
    for (const auto& [blk, coeff] : prep.rows[i]) cert.slack[blk] += weights(i) * coeff;
  double norm = std::abs(prep.rhs.dot(weights));
  double lmin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < nb; ++k) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(sym(cert.slack[k]), Eigen::EigenvaluesOnly);
    const RVector& ev = es.eigenvalues();
    norm = std::max({norm, std::abs(ev(0)), std::abs(ev(ev.size() - 1))});
    lmin = std::min(lmin, ev(0));
  }
  if (!(norm > 0.0) || !std::isfinite(norm)) return cert;
  cert.rhs_value = prep.rhs.dot(weights) / norm;
  cert.min_slack_eig = lmin / norm;
  cert.verified = cert.min_slack_eig >= -tol && cert.rhs_value < -10.0 * tol;
  return cert;
}

Residuals check_primal(const SdpProblem& problem, const std::vector<RMatrix>& primal) {
  const Prepared prep = prepare(problem);
  Residuals res;
  if (primal.size() != problem.blocks.size()) {
    throw Error(ErrorCode::DimMismatch, "check_primal: block count");
  }
  RVector ax(prep.rows.size());
  for (size_t i = 0; i < prep.rows.size(); ++i) {
    double s = 0.0;
    for (const auto& [blk, coeff] : prep.rows[i]) s += frob_inner(coeff, primal[blk]);
    ax(i) = s;
  }
  res.primal_infeasibility = (ax - prep.rhs).norm() / (1.0 + prep.rhs.norm());
  res.min_block_margin = std::numeric_limits<double>::infinity();
  for (const RMatrix& x : primal)
    res.min_block_margin = std::min(res.min_block_margin, real_psd_margin(x));
  return res;
}

SdpResult solve(const SdpProblem& problem, const SolverOptions& o) {
  const Prepared prep = prepare(problem);
  const int nb = static_cast<int>(problem.blocks.size());
  const int m_all = static_cast<int>(prep.rows.size());
  const bool has_objective = !problem.objective.empty();

  // Zero rows: consistent ones are dropped, others refute feasibility outright.
  RVector rho = RVector::Zero(m_all);
  std::vector<int> live;
  for (int i = 0; i < m_all; ++i) {
    rho(i) = row_norm(prep.rows[i]);
    if (rho(i) > 0.0) {
      live.push_back(i);
    } else if (prep.rhs(i) != 0.0) {
      RVector w = RVector::Zero(m_all);
      w(i) = prep.rhs(i) > 0 ? -1.0 : 1.0;
      return certificate_result(problem, w, o, "constraint 0 = nonzero");
    }
  }

  // Normalized rows, consistency and redundancy of the affine system.
  const int ml = static_cast<int>(live.size());
  RMatrix gram = RMatrix::Zero(ml, ml);
  RVector bhat(ml);
  std::vector<std::vector<RMatrix>> dense(ml, std::vector<RMatrix>(nb));
  for (int a = 0; a < ml; ++a) {
    bhat(a) = prep.rhs(live[a]) / rho(live[a]);
    for (const auto& [blk, coeff] : prep.rows[live[a]]) dense[a][blk] = coeff / rho(live[a]);
  }
  for (int a = 0; a < ml; ++a)
    for (int c = a; c < ml; ++c) {
      double s = 0.0;
      for (int k = 0; k < nb; ++k)
        if (dense[a][k].size() && dense[c][k].size()) s += frob_inner(dense[a][k], dense[c][k]);
      gram(a, c) = gram(c, a) = s;
    }
  std::vector<int> kept;  // indices into live
  if (ml > 0) {
    Eigen::CompleteOrthogonalDecomposition<RMatrix> cod(gram);
    cod.setThreshold(1e-11);
    const RVector g = cod.solve(bhat);
    const RVector resid = bhat - gram * g;
    if (resid.norm() > 1e-9 * (1.0 + bhat.norm())) {
      RVector w = RVector::Zero(m_all);
      for (int a = 0; a < ml; ++a) w(live[a]) = -resid(a) / rho(live[a]);
      return certificate_result(problem, w, o, "affine constraints inconsistent");
    }
    Eigen::ColPivHouseholderQR<RMatrix> qr(gram);
    qr.setThreshold(1e-11);
    const int rank = static_cast<int>(qr.rank());
    for (int r = 0; r < rank; ++r) kept.push_back(qr.colsPermutation().indices()(r));
    std::sort(kept.begin(), kept.end());
  }

  // Blocks that no constraint touches.
  std::vector<bool> touched(nb, false);
  for (int a : kept)
    for (int k = 0; k < nb; ++k)
      if (dense[a][k].size()) touched[k] = true;
  std::vector<int> active;
  std::vector<int> slot(nb, -1);
  for (int k = 0; k < nb; ++k) {
    if (touched[k]) {
      slot[k] = static_cast<int>(active.size());
      active.push_back(k);
    } else if (has_objective && real_min_eig(problem.objective[k]) < 0.0) {
      SdpResult r;
      r.message = "objective unbounded on unconstrained block " + problem.blocks[k].name;
      return r;
    }
  }

  auto assemble = [&](const IpmOutcome& ipm, double shift, double scale) {
    std::vector<RMatrix> primal;
    for (int k = 0; k < nb; ++k) {
      const int n = problem.blocks[k].real_dim();
      if (slot[k] < 0) {
        primal.push_back(RMatrix::Zero(n, n));
      } else {
        primal.push_back(scale * (ipm.x[slot[k]] + shift * RMatrix::Identity(n, n)));
      }
    }
    return primal;
  };
  auto expand_dual = [&](const RVector& y, double factor) {
    RVector full = RVector::Zero(m_all);
    for (size_t r = 0; r < kept.size(); ++r)
      full(live[kept[r]]) = factor * y(r) / rho(live[kept[r]]);
    return full;
  };

  // Feasibility: maximize z subject to A(Y) = b, Y - zI >= 0, z <= 1, through
  // Y = X + (1 - s) I with s >= 0 and objective min s.
  auto margin_solve = [&]() -> SdpResult {
    SdpResult r;
    const double beta = kept.empty() ? 0.0 : [&] {
      double mx = 0.0;
      for (int a : kept) mx = std::max(mx, std::abs(bhat(a)));
      return mx;
    }();
    if (beta == 0.0) {
      r.status = Status::Feasible;
      for (int k = 0; k < nb; ++k) {
        const int n = problem.blocks[k].real_dim();
        r.primal.push_back(RMatrix::Zero(n, n));
      }
      r.residuals = check_primal(problem, r.primal);
      r.dual = RVector::Zero(m_all);
      r.message = "zero right-hand side";
      fill_hermitian(problem, r);
      return r;
    }
    StdForm sf;
    for (int k : active) sf.dims.push_back(problem.blocks[k].real_dim());
    sf.dims.push_back(1);
    const int s_block = static_cast<int>(active.size());
    sf.b.resize(kept.size());
    for (size_t r2 = 0; r2 < kept.size(); ++r2) {
      const int a = kept[r2];
      Row row;
      double tr = 0.0;
      for (int k = 0; k < nb; ++k)
        if (dense[a][k].size()) {
          row.emplace_back(slot[k], dense[a][k]);
          tr += dense[a][k].trace();
        }
      row.emplace_back(s_block, RMatrix::Constant(1, 1, -tr));
      sf.rows.push_back(std::move(row));
      sf.b(r2) = bhat(a) / beta - tr;
    }
    for (int d : sf.dims) sf.c.push_back(RMatrix::Zero(d, d));
    sf.c.back()(0, 0) = 1.0;

    const IpmOutcome ipm = run_ipm(sf, o);
    const double z = 1.0 - ipm.x.back()(0, 0);
    r.residuals.iterations = ipm.iterations;
    r.residuals.relative_gap = ipm.relgap;
    r.residuals.dual_infeasibility = ipm.dinf;
    r.residuals.eigen_margin = z;
    const bool usable = ipm.converged || (ipm.pinf < 1e-6 && ipm.dinf < 1e-6 && ipm.relgap < 1e-6);
    if (!usable) {
      r.message = "interior point did not converge: " + ipm.message;
      return r;
    }
    if (z >= -o.infeasible_margin) {
      std::vector<RMatrix> primal = assemble(ipm, z, beta);
      for (int k = 0; k < nb; ++k) {
        const double lmin = real_min_eig(primal[k]);
        const double norm = std::max(1.0, primal[k].norm());
        if (lmin < 0.0 && -lmin <= 10.0 * o.infeasible_margin * norm)
          primal[k] += (-lmin) * RMatrix::Identity(primal[k].rows(), primal[k].cols());
      }
      r.primal = std::move(primal);
      const Residuals chk = check_primal(problem, r.primal);
      r.residuals.primal_infeasibility = chk.primal_infeasibility;
      r.residuals.min_block_margin = chk.min_block_margin;
      r.dual = expand_dual(ipm.y, 1.0);
      fill_hermitian(problem, r);
      if (chk.primal_infeasibility <= o.residual_tol && chk.min_block_margin >= -o.tol_psd) {
        r.status = Status::Feasible;
        r.message = z > o.infeasible_margin ? "strictly feasible" : "feasible (boundary)";
      } else {
        r.message = "primal point failed verification";
      }
      return r;
    }
    const RVector w = expand_dual(-ipm.y, 1.0);
    SdpResult cr = certificate_result(problem, w, o, "no point with nonnegative eigenvalue margin");
    cr.residuals = r.residuals;
    return cr;
  };

  if (!has_objective) return margin_solve();

  // Optimization path.
  StdForm sf;
  for (int k : active) sf.dims.push_back(problem.blocks[k].real_dim());
  double cscale = 0.0;
  for (int k : active) cscale = std::max(cscale, problem.objective[k].norm());
  cscale = std::max(cscale, 1e-300);
  for (int k : active) sf.c.push_back(sym(problem.objective[k]) / cscale);
  sf.b.resize(kept.size());
  for (size_t r2 = 0; r2 < kept.size(); ++r2) {
    const int a = kept[r2];
    Row row;
    for (int k = 0; k < nb; ++k)
      if (dense[a][k].size()) row.emplace_back(slot[k], dense[a][k]);
    sf.rows.push_back(std::move(row));
    sf.b(r2) = bhat(a);
  }
  const IpmOutcome ipm = run_ipm(sf, o);
  if (ipm.converged || (ipm.pinf < 1e-7 && ipm.dinf < 1e-7 && ipm.relgap < 1e-7)) {
    SdpResult r;
    r.primal = assemble(ipm, 0.0, 1.0);
    const Residuals chk = check_primal(problem, r.primal);
    r.residuals = chk;
    r.residuals.iterations = ipm.iterations;
    r.residuals.relative_gap = ipm.relgap;
    r.residuals.dual_infeasibility = ipm.dinf;
    r.dual = expand_dual(ipm.y, cscale);
    r.objective = 0.0;
    for (int k = 0; k < nb; ++k) r.objective += frob_inner(problem.objective[k], r.primal[k]);
    fill_hermitian(problem, r);
    if (chk.primal_infeasibility <= o.residual_tol && chk.min_block_margin >= -o.tol_psd) {
      r.status = Status::Feasible;
      r.message = "optimal";
    } else {
      r.message = "optimal point failed verification";
    }
    return r;
  }
  SdpResult fallback = margin_solve();
  if (fallback.status == Status::Feasible) {
    fallback.status = Status::Inconclusive;
    fallback.message = "feasible, but optimization did not converge: " + ipm.message;
  }
  return fallback;
}

RMatrix hermitian_to_real_embedding(const CMatrix& m) {
  if (!is_hermitian(m, 1e-10)) {
    throw Error(ErrorCode::NotHermitian, "hermitian_to_real_embedding");
  }
  const Eigen::Index n = m.rows();
  const RMatrix re = 0.5 * (m + m.adjoint()).real();
  const RMatrix im = 0.5 * (m + m.adjoint()).imag();
  RMatrix out(2 * n, 2 * n);
  out << re, -im, im, re;
  return out;
}

CMatrix hermitian_from_real_block(const RMatrix& z) {
  const Eigen::Index n = z.rows() / 2;
  const RMatrix re = 0.5 * (z.topLeftCorner(n, n) + z.bottomRightCorner(n, n));
  const RMatrix im = 0.5 * (z.bottomLeftCorner(n, n) - z.topRightCorner(n, n));
  CMatrix h(n, n);
  h.real() = 0.5 * (re + re.transpose());
  h.imag() = 0.5 * (im - im.transpose());
  return h;
}

RMatrix hermitian_functional(const CMatrix& g) {
  return 0.5 * hermitian_to_real_embedding(g);
}

std::vector<HermitianBasisElement> hermitian_basis(int n, HermitianPart which) {
  std::vector<HermitianBasisElement> basis;
  const Complex half_i(0.0, 0.5);
  for (int i = 0; i < n; ++i) {
    if (which != HermitianPart::Imaginary) {
      basis.push_back({matrix_unit(n, i, i), i, i, HermitianPart::Real});
    }
    for (int j = i + 1; j < n; ++j) {
      if (which != HermitianPart::Imaginary) {
        CMatrix g = CMatrix::Zero(n, n);
        g(i, j) = g(j, i) = 0.5;
        basis.push_back({g, i, j, HermitianPart::Real});
      }
      if (which != HermitianPart::Real) {
        CMatrix g = CMatrix::Zero(n, n);
        g(j, i) = -half_i;
        g(i, j) = half_i;
        basis.push_back({g, i, j, HermitianPart::Imaginary});
      }
    }
  }
  return basis;
}

void add_hermitian_matrix_equality(SdpProblem& problem,
                                   const std::vector<HermitianTerm>& terms,
                                   const CMatrix& target, HermitianPart which) {
  const int n = static_cast<int>(target.rows());
  for (const HermitianBasisElement& e : hermitian_basis(n, which)) {
    Equality eq;
    for (const HermitianTerm& t : terms) {
      eq.terms.emplace_back(t.block, hermitian_functional(t.adjoint_action(e.g)));
    }
    eq.rhs = (e.g * target).trace().real();
    problem.equalities.push_back(std::move(eq));
  }
}

}  // namespace ebkit::sdp
