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

#include "ebkit/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include "ebkit/errors.hpp"
#include "ebkit/random.hpp"

namespace ebkit {

namespace {

constexpr double kCocpMargin = 0.01;

CMatrix hermitian_combination(const RMatrix& re, const RMatrix& im_coeff, double sign) {
  CMatrix h(re.rows(), re.cols());
  h.real() = re;
  h.imag() = sign * im_coeff;
  return h;
}

}  // namespace

RMatrix symplectic_form(int n) {
  if (n < 1) throw Error(ErrorCode::DomainError, "symplectic_form: n < 1");
  RMatrix s = RMatrix::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    s(2 * k, 2 * k + 1) = 1.0;
    s(2 * k + 1, 2 * k) = -1.0;
  }
  return s;
}

GaussianChannel::GaussianChannel(RMatrix x, RMatrix y, double tol_psd)
    : n_(static_cast<int>(x.rows() / 2)), x_(std::move(x)), y_(std::move(y)), valid_(false) {
  if (x_.rows() < 2 || x_.rows() % 2 != 0 || x_.cols() != x_.rows() || y_.rows() != x_.rows() ||
      y_.cols() != x_.rows()) {
    throw Error(ErrorCode::DimMismatch, "GaussianChannel: X and Y must be 2n x 2n");
  }
  if (!x_.allFinite() || !y_.allFinite()) {
    throw Error(ErrorCode::DomainError, "GaussianChannel: non-finite entries");
  }
  const double asym = (y_ - y_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, y_.cwiseAbs().maxCoeff())) {
    throw Error(ErrorCode::DomainError, "GaussianChannel: Y not symmetric");
  }
  y_ = 0.5 * (y_ + y_.transpose()).eval();
  valid_ = is_valid(*this, tol_psd);
}

CMatrix validity_matrix(const GaussianChannel& c) {
  const RMatrix s = symplectic_form(c.modes());
  return hermitian_combination(c.y(), s - c.x() * s * c.x().transpose(), 1.0);
}

CMatrix cocp_matrix(const GaussianChannel& c) {
  const RMatrix s = symplectic_form(c.modes());
  return hermitian_combination(c.y(), s + c.x() * s * c.x().transpose(), -1.0);
}

double embedded_min_eig(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(sdp::hermitian_to_real_embedding(h),
                                            Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool embedded_psd(const CMatrix& h, double tol_psd) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(sdp::hermitian_to_real_embedding(h),
                                            Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0) >= -tol_psd * std::max(1.0, max_abs(h));
}

bool is_valid(const GaussianChannel& c, double tol_psd) {
  return embedded_psd(validity_matrix(c), tol_psd);
}

bool is_cocp(const GaussianChannel& c, double tol_psd) {
  return embedded_psd(cocp_matrix(c), tol_psd);
}

sdp::GaussianSplit is_eb(const GaussianChannel& c, const sdp::SolverOptions& opts) {
  return sdp::gaussian_eb_split(c.y(), c.x(), opts);
}

GaussianChannel compose(const GaussianChannel& c2, const GaussianChannel& c1) {
  if (c1.modes() != c2.modes()) {
    throw Error(ErrorCode::ModeMismatch, "compose: channels act on different mode counts");
  }
  const RMatrix y = c2.x() * c1.y() * c2.x().transpose() + c2.y();
  return GaussianChannel(c2.x() * c1.x(), 0.5 * (y + y.transpose()));
}

Ppt2Witness ppt2_witness(const GaussianChannel& c2, const GaussianChannel& c1, double tol_psd) {
  if (c1.modes() != c2.modes()) {
    throw Error(ErrorCode::ModeMismatch, "ppt2_witness: channels act on different mode counts");
  }
  for (const GaussianChannel* c : {&c1, &c2}) {
    if (!is_valid(*c, tol_psd) || !is_cocp(*c, tol_psd)) {
      throw Error(ErrorCode::PreconditionFailed,
                  "ppt2_witness: both channels must be valid and coCP");
    }
  }
  Ppt2Witness w;
  const RMatrix s = symplectic_form(c1.modes());
  const RMatrix x = c2.x() * c1.x();
  w.n = c2.x() * c1.y() * c2.x().transpose();
  w.n = 0.5 * (w.n + w.n.transpose()).eval();
  w.m = c2.y();
  const CMatrix hn = hermitian_combination(w.n, x * s * x.transpose(), -1.0);
  const CMatrix hm = hermitian_combination(w.m, s, -1.0);
  w.n_margin = embedded_min_eig(hn);
  w.m_margin = embedded_min_eig(hm);
  w.verified = embedded_psd(hn, tol_psd) && embedded_psd(hm, tol_psd);
  return w;
}

GaussianChannel random_cocp_channel(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::DomainError, "random_cocp_channel: n < 1");
  Rng rng(seed);
  const RMatrix x = random_real_matrix(2 * n, 2 * n, rng);
  const RMatrix a = random_real_matrix(2 * n, 2 * n, rng);
  const RMatrix p = a * a.transpose();
  const RMatrix s = symplectic_form(n);
  const RMatrix xsx = x * s * x.transpose();
  const double lv = embedded_min_eig(hermitian_combination(p, s - xsx, 1.0));
  const double lc = embedded_min_eig(hermitian_combination(p, s + xsx, -1.0));
  const double lambda = std::max(kCocpMargin - lv, kCocpMargin - lc) + 1e-12;
  RMatrix y = p + lambda * RMatrix::Identity(2 * n, 2 * n);
  y = 0.5 * (y + y.transpose()).eval();
  return GaussianChannel(x, y);
}

}  // namespace ebkit
