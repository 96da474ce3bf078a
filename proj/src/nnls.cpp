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

#include "ebkit/nnls.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace ebkit {

namespace {

RVector solve_passive(const RMatrix& a, const RVector& b, const std::vector<int>& passive) {
  RMatrix ap(a.rows(), static_cast<Eigen::Index>(passive.size()));
  for (size_t k = 0; k < passive.size(); ++k) ap.col(k) = a.col(passive[k]);
  return ap.colPivHouseholderQr().solve(b);
}

}  // namespace

NnlsResult nnls(const RMatrix& a, const RVector& b, int max_iterations) {
  const Eigen::Index n = a.cols();
  if (max_iterations <= 0) max_iterations = static_cast<int>(3 * n + 30);
  NnlsResult out;
  out.x = RVector::Zero(n);
  std::vector<bool> in_passive(n, false);
  const double tol = 10.0 * std::numeric_limits<double>::epsilon() *
                     std::max<double>(1.0, a.cwiseAbs().maxCoeff()) *
                     static_cast<double>(std::max(a.rows(), n));

  RVector w = a.transpose() * (b - a * out.x);
  int iter = 0;
  while (iter < max_iterations) {
    Eigen::Index best = -1;
    double wmax = tol;
    for (Eigen::Index j = 0; j < n; ++j)
      if (!in_passive[j] && w(j) > wmax) {
        wmax = w(j);
        best = j;
      }
    if (best < 0) {
      out.converged = true;
      break;
    }
    in_passive[best] = true;
    while (true) {
      ++iter;
      std::vector<int> passive;
      for (Eigen::Index j = 0; j < n; ++j)
        if (in_passive[j]) passive.push_back(static_cast<int>(j));
      const RVector z = solve_passive(a, b, passive);
      bool all_positive = true;
      for (Eigen::Index k = 0; k < z.size(); ++k)
        if (z(k) <= 0.0) all_positive = false;
      if (all_positive) {
        out.x.setZero();
        for (size_t k = 0; k < passive.size(); ++k) out.x(passive[k]) = z(k);
        break;
      }
      double alpha = std::numeric_limits<double>::infinity();
      for (size_t k = 0; k < passive.size(); ++k)
        if (z(k) <= 0.0) {
          const double xk = out.x(passive[k]);
          alpha = std::min(alpha, xk / (xk - z(k)));
        }
      for (size_t k = 0; k < passive.size(); ++k) {
        const int j = passive[k];
        out.x(j) += alpha * (z(k) - out.x(j));
        if (out.x(j) <= tol * std::max(1.0, out.x.cwiseAbs().maxCoeff())) {
          out.x(j) = 0.0;
          in_passive[j] = false;
        }
      }
      if (iter >= max_iterations) break;
    }
    w = a.transpose() * (b - a * out.x);
  }
  out.iterations = iter;
  out.residual_norm = (a * out.x - b).norm();
  return out;
}

}  // namespace ebkit
