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

#include "ebkit/criteria.hpp"
#include "ebkit/nnls.hpp"
#include "ebkit/random.hpp"

namespace ebkit {

namespace {

constexpr int kMaxFrameAtoms = 4000;
const double kSqrt2 = std::sqrt(2.0);

// Real coordinates of a Hermitian matrix, isometric for the Frobenius norm.
RVector herm_vec(const CMatrix& h) {
  const Eigen::Index n = h.rows();
  RVector v(n * n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    v(k++) = h(i, i).real();
    for (Eigen::Index j = i + 1; j < n; ++j) {
      v(k++) = kSqrt2 * h(i, j).real();
      v(k++) = kSqrt2 * h(i, j).imag();
    }
  }
  return v;
}

RVector atom_vec(const CVector& v) { return herm_vec(v * v.adjoint()); }

struct Atom {
  CVector a;
  CVector b;
  CVector v;  // a (x) b
  RVector col;
  bool frame = false;
};

Atom make_atom(const CVector& a, const CVector& b, bool frame) {
  Atom at;
  at.a = a / a.norm();
  at.b = b / b.norm();
  at.v = kron(at.a, at.b);
  at.col = atom_vec(at.v);
  at.frame = frame;
  return at;
}

// e_i and (e_i + i^k e_j) / sqrt(2): spans M_d and sums to a multiple of I.
std::vector<CVector> local_frame(int d) {
  std::vector<CVector> out;
  for (int i = 0; i < d; ++i) out.push_back(basis_vector(d, i));
  const Complex phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (const Complex& ph : phases) {
        CVector v = CVector::Zero(d);
        v(i) = 1.0 / kSqrt2;
        v(j) = ph / kSqrt2;
        out.push_back(v);
      }
  return out;
}

CMatrix reconstruct(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b, int n) {
  CMatrix s = CMatrix::Zero(n, n);
  for (size_t k = 0; k < a.size(); ++k) s += kron(a[k], b[k]);
  return s;
}

std::optional<SeparableDecomposition> try_product(const CMatrix& x, BipartiteDims dims) {
  Eigen::JacobiSVD<CMatrix> svd(realign(x, dims), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector s = svd.singularValues();
  if (s.size() > 1 && s(1) > 1e-12 * s(0)) return std::nullopt;
  CMatrix a(dims.dA, dims.dA), b(dims.dB, dims.dB);
  for (int i = 0; i < dims.dA; ++i)
    for (int j = 0; j < dims.dA; ++j) a(i, j) = svd.matrixU()(i * dims.dA + j, 0);
  for (int i = 0; i < dims.dB; ++i)
    for (int j = 0; j < dims.dB; ++j) b(i, j) = std::conj(svd.matrixV()(i * dims.dB + j, 0));
  const Complex tr = a.trace();
  if (std::abs(tr) < 1e-12) return std::nullopt;
  const Complex phase = std::conj(tr) / std::abs(tr);
  a *= phase;
  b *= s(0) / phase;
  a = 0.5 * (a + a.adjoint()).eval();
  b = 0.5 * (b + b.adjoint()).eval();
  SeparableDecomposition dec;
  dec.a = {a};
  dec.b = {b};
  dec.method = "product";
  return dec;
}

// Best product vector for <ab|R|ab> from random starts by alternating
// top-eigenvector steps.
std::vector<std::pair<double, Atom>> product_search(const CMatrix& r, BipartiteDims dims, int starts,
                                                    Rng& rng) {
  std::vector<std::pair<double, Atom>> found;
  const int da = dims.dA, db = dims.dB;
  for (int s = 0; s < starts; ++s) {
    CVector a = random_unit_vector(da, rng), b;
    double val = -std::numeric_limits<double>::infinity();
    for (int it = 0; it < 30; ++it) {
      CMatrix rb = CMatrix::Zero(db, db);
      for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j) rb += std::conj(a(i)) * a(j) * r.block(i * db, j * db, db, db);
      Eigen::SelfAdjointEigenSolver<CMatrix> eb(0.5 * (rb + rb.adjoint()));
      b = eb.eigenvectors().col(db - 1);
      CMatrix ra = CMatrix::Zero(da, da);
      for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
          ra(i, j) = (b.adjoint() * r.block(i * db, j * db, db, db) * b)(0, 0);
      Eigen::SelfAdjointEigenSolver<CMatrix> ea(0.5 * (ra + ra.adjoint()));
      a = ea.eigenvectors().col(da - 1);
      const double nv = ea.eigenvalues()(da - 1);
      if (nv - val < 1e-15 * std::max(1.0, std::abs(nv))) {
        val = nv;
        break;
      }
      val = nv;
    }
    found.emplace_back(val, make_atom(a, b, false));
  }
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  return found;
}

struct Fit {
  RVector weights;
  double residual = 0.0;  // max-abs residual, relative
};

Fit refit(const std::vector<Atom>& atoms, const RVector& target, const CMatrix& x, double xnorm) {
  RMatrix a(target.size(), static_cast<Eigen::Index>(atoms.size()));
  for (size_t k = 0; k < atoms.size(); ++k) a.col(k) = atoms[k].col;
  const NnlsResult res = nnls(a, target);
  Fit f;
  f.weights = res.x;
  CMatrix s = CMatrix::Zero(x.rows(), x.cols());
  for (size_t k = 0; k < atoms.size(); ++k)
    if (f.weights(k) > 0.0) s += f.weights(k) * atoms[k].v * atoms[k].v.adjoint();
  f.residual = max_abs(x - s) / xnorm;
  return f;
}

// Levenberg-Marquardt on X = sum_k (a_k (x) b_k)(a_k (x) b_k)^dag over
// unnormalized a_k, b_k.
double refine_lm(std::vector<CVector>& as, std::vector<CVector>& bs, const CMatrix& x,
                 BipartiteDims dims, double goal, int max_iterations) {
  const int da = dims.dA, db = dims.dB, n = dims.total();
  const int k = static_cast<int>(as.size());
  const int per = 2 * (da + db);
  const double xnorm = max_abs(x);
  auto residual = [&](const std::vector<CVector>& a, const std::vector<CVector>& b) {
    CMatrix s = -x;
    for (int t = 0; t < k; ++t) {
      const CVector v = kron(a[t], b[t]);
      s += v * v.adjoint();
    }
    return s;
  };
  CMatrix rmat = residual(as, bs);
  RVector r = herm_vec(rmat);
  double cost = r.squaredNorm();
  double lambda = 1e-3 * std::max(1.0, cost);
  for (int it = 0; it < max_iterations; ++it) {
    if (max_abs(rmat) <= goal * xnorm) break;
    RMatrix jac(n * n, per * k);
    for (int t = 0; t < k; ++t) {
      const CVector v = kron(as[t], bs[t]);
      int col = per * t;
      auto push = [&](const CVector& dv) {
        const CMatrix m = dv * v.adjoint();
        jac.col(col++) = herm_vec(m + m.adjoint());
      };
      for (int i = 0; i < da; ++i) {
        const CVector e = basis_vector(da, i);
        push(kron(e, bs[t]));
        push(Complex(0, 1) * kron(e, bs[t]));
      }
      for (int i = 0; i < db; ++i) {
        const CVector e = basis_vector(db, i);
        push(kron(as[t], e));
        push(Complex(0, 1) * kron(as[t], e));
      }
    }
    const RMatrix jjt = jac * jac.transpose();
    bool improved = false;
    for (int tries = 0; tries < 12 && !improved; ++tries) {
      const RMatrix sys = jjt + lambda * RMatrix::Identity(n * n, n * n);
      const RVector u = sys.llt().solve(r);
      const RVector delta = -jac.transpose() * u;
      std::vector<CVector> na = as, nb = bs;
      for (int t = 0; t < k; ++t) {
        int p = per * t;
        for (int i = 0; i < da; ++i, p += 2) na[t](i) += Complex(delta(p), delta(p + 1));
        for (int i = 0; i < db; ++i, p += 2) nb[t](i) += Complex(delta(p), delta(p + 1));
      }
      const CMatrix nr = residual(na, nb);
      const RVector nrv = herm_vec(nr);
      const double ncost = nrv.squaredNorm();
      if (ncost < cost) {
        as = std::move(na);
        bs = std::move(nb);
        rmat = nr;
        r = nrv;
        cost = ncost;
        lambda = std::max(lambda / 3.0, 1e-15);
        improved = true;
      } else {
        lambda *= 4.0;
      }
    }
    if (!improved) break;
    // Rebalance each term so that |a_k| = |b_k|.
    for (int t = 0; t < k; ++t) {
      const double na = as[t].norm(), nb = bs[t].norm();
      if (na > 0 && nb > 0) {
        const double g = std::sqrt(nb / na);
        as[t] *= g;
        bs[t] /= g;
      }
    }
  }
  return max_abs(rmat) / xnorm;
}

SeparableDecomposition from_atoms(const std::vector<Atom>& atoms, const RVector& w) {
  SeparableDecomposition dec;
  for (size_t k = 0; k < atoms.size(); ++k) {
    if (w(k) <= 0.0) continue;
    dec.a.push_back(w(k) * atoms[k].a * atoms[k].a.adjoint());
    dec.b.push_back(atoms[k].b * atoms[k].b.adjoint());
  }
  return dec;
}

}  // namespace

bool verify_separable_decomposition(const BipartiteState& x, const SeparableDecomposition& dec,
                                    double target, double tol_psd) {
  if (dec.a.size() != dec.b.size()) return false;
  const BipartiteDims dims = x.dims();
  for (size_t k = 0; k < dec.a.size(); ++k) {
    if (dec.a[k].rows() != dims.dA || dec.b[k].rows() != dims.dB) return false;
    if (!is_hermitian(dec.a[k], 1e-10) || !is_hermitian(dec.b[k], 1e-10)) return false;
    if (!is_psd(dec.a[k], tol_psd) || !is_psd(dec.b[k], tol_psd)) return false;
  }
  const double xnorm = max_abs(x.mat());
  const double res = max_abs(x.mat() - reconstruct(dec.a, dec.b, dims.total()));
  return res <= target * std::max(xnorm, std::numeric_limits<double>::min());
}

std::optional<SeparableDecomposition> heuristic_sep_certify(const BipartiteState& x,
                                                            const SepOptions& opts) {
  const BipartiteDims dims = x.dims();
  const int n = dims.total();
  const double xnorm = max_abs(x.mat());
  if (xnorm == 0.0) {
    SeparableDecomposition dec;
    dec.method = "zero";
    return dec;
  }
  if (!is_ppt_state(x, opts.tol_psd) || !realignment_criterion(x)) return std::nullopt;

  auto finish = [&](SeparableDecomposition dec) -> std::optional<SeparableDecomposition> {
    dec.residual = max_abs(x.mat() - reconstruct(dec.a, dec.b, n)) / xnorm;
    if (!verify_separable_decomposition(x, dec, opts.target, opts.tol_psd)) return std::nullopt;
    return dec;
  };

  if (auto p = try_product(x.mat(), dims)) {
    if (auto ok = finish(*p)) return ok;
  }

  const CMatrix& xm = x.mat();
  const RVector target = herm_vec(xm);
  Rng rng(opts.seed);

  std::vector<Atom> atoms;
  const std::vector<CVector> fa = local_frame(dims.dA), fb = local_frame(dims.dB);
  if (static_cast<int>(fa.size() * fb.size()) <= kMaxFrameAtoms) {
    for (const CVector& a : fa)
      for (const CVector& b : fb) atoms.push_back(make_atom(a, b, true));
  }

  int added = 0;
  Fit fit;
  double best_residual = std::numeric_limits<double>::infinity();
  int stall = 0;
  const int batch = std::max(1, opts.refit_every);
  while (true) {
    fit = atoms.empty() ? Fit{RVector(), 1.0} : refit(atoms, target, xm, xnorm);
    if (fit.residual <= 0.1 * opts.target) break;
    if (fit.residual < 0.5 * best_residual) {
      best_residual = fit.residual;
      stall = 0;
    } else if (++stall >= 8) {
      break;
    }
    if (added >= opts.max_terms) break;
    // Residual of the current fit drives the next batch of product atoms.
    CMatrix r = xm;
    for (size_t k = 0; k < atoms.size(); ++k)
      if (fit.weights.size() && fit.weights(k) > 0.0) r -= fit.weights(k) * atoms[k].v * atoms[k].v.adjoint();
    std::vector<Atom> kept;
    for (size_t k = 0; k < atoms.size(); ++k)
      if (atoms[k].frame || (fit.weights.size() && fit.weights(k) > 0.0)) kept.push_back(atoms[k]);
    atoms = std::move(kept);
    const auto cand = product_search(r, dims, batch, rng);
    int accepted = 0;
    for (const auto& [val, atom] : cand) {
      if (val <= 1e-15 * xnorm) break;
      bool dup = false;
      for (size_t k = atoms.size() - accepted; k < atoms.size(); ++k)
        if (std::norm(atom.v.dot(atoms[k].v)) > 1.0 - 1e-10) dup = true;
      if (dup) continue;
      atoms.push_back(atom);
      ++accepted;
      if (++added >= opts.max_terms) break;
    }
    if (accepted == 0) break;
  }

  if (fit.residual <= opts.target && fit.weights.size()) {
    SeparableDecomposition dec = from_atoms(atoms, fit.weights);
    dec.method = "column-generation";
    if (auto ok = finish(dec)) return ok;
  }

  // Boundary states: local refinement of the unnormalized product vectors.
  std::vector<CVector> as, bs;
  for (size_t k = 0; k < atoms.size(); ++k)
    if (fit.weights.size() && fit.weights(k) > 1e-14 * xnorm) {
      as.push_back(std::sqrt(fit.weights(k)) * atoms[k].a);
      bs.push_back(atoms[k].b);
    }
  const int min_terms = 2 * n;
  const double small = std::sqrt(1e-4 * xm.trace().real() / std::max(1, min_terms));
  while (static_cast<int>(as.size()) < min_terms) {
    as.push_back(small * random_unit_vector(dims.dA, rng));
    bs.push_back(random_unit_vector(dims.dB, rng));
  }
  for (int round = 0; round < 4; ++round) {
    const double res = refine_lm(as, bs, xm, dims, 0.1 * opts.target, 400);
    if (res <= opts.target) {
      SeparableDecomposition dec;
      for (size_t k = 0; k < as.size(); ++k) {
        dec.a.push_back(as[k] * as[k].adjoint());
        dec.b.push_back(bs[k] * bs[k].adjoint());
      }
      dec.method = "column-generation+levenberg-marquardt";
      if (auto ok = finish(dec)) return ok;
    }
    const int grow = std::min<int>(static_cast<int>(as.size()), n * n - static_cast<int>(as.size()));
    if (grow <= 0) break;
    for (int g = 0; g < grow; ++g) {
      as.push_back(small * random_unit_vector(dims.dA, rng));
      bs.push_back(random_unit_vector(dims.dB, rng));
    }
  }
  return std::nullopt;
}

}  // namespace ebkit
