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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ebkit/catalog.hpp"
#include "ebkit/choi.hpp"
#include "ebkit/criteria.hpp"
#include "ebkit/gaussian.hpp"
#include "ebkit/random.hpp"
#include "ebkit/sdp_apps.hpp"

using namespace ebkit;

namespace {

constexpr std::uint64_t kSeed = 20261014;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

std::vector<double> p_grid() {
  std::vector<double> g;
  for (int k = -100; k <= 100; ++k) g.push_back(k / 100.0);
  return g;
}

Outcome criterion1() {
  int mismatches = 0, total = 0;
  std::string diag;
  for (int d = 2; d <= 5; ++d) {
    double lo = 2.0, hi = -2.0;
    for (double p : p_grid()) {
      if (std::abs(p - 1.0 / d) < 1e-6) continue;
      ++total;
      const bool cocp = is_cocp(catalog::holevo_werner(d, p).map);
      if (cocp != (p >= 1.0 / d)) ++mismatches;
      if (cocp) {
        lo = std::min(lo, p);
        hi = std::max(hi, p);
      }
    }
    diag += fmt(" d=%g:coCP on [%.2f,%.2f]", d, lo, hi);
  }
  return {mismatches == 0, fmt("mismatches=%g/%g vs stated p>=1/d;", mismatches, total) + diag};
}

Outcome criterion2() {
  int mismatches = 0, total = 0, below = 0;
  for (int d = 3; d <= 5; ++d) {
    for (double p : p_grid()) {
      if (std::abs(p - 0.5) < 1e-3) continue;
      ++total;
      const bool cert = two_eb_ball_certificate(catalog::holevo_werner(d, p).map, 64, kSeed);
      if (cert != (p <= 0.5)) {
        ++mismatches;
        if (p < -0.5) ++below;
      }
    }
  }
  return {mismatches == 0,
          fmt("mismatches=%g/%g (%g with p<-1/2, where the ball norm |p| exceeds 1/2)", mismatches, total, below)};
}

Outcome criterion3() {
  int ok = 0, total = 0;
  double worst = 0.0;
  for (int k = -10; k <= 10; ++k) {
    const double p = k / 10.0;
    const QuantumMap w = catalog::holevo_werner(3, p).map;
    const BipartiteState x(compose(w, w).choi(), {3, 3});
    ++total;
    SepOptions so;
    so.seed = derive_seed(kSeed, static_cast<std::uint64_t>(k + 10));
    const auto dec = heuristic_sep_certify(x, so);
    if (is_ppt_state(x) && dec && verify_separable_decomposition(x, *dec)) {
      ++ok;
      worst = std::max(worst, dec->residual);
    }
  }
  return {ok == total, fmt("certified=%g/%g worst_residual=%.2e", ok, total, worst)};
}

Outcome criterion4() {
  const QuantumMap p = catalog::rank3_example().map;
  const bool cp = is_cp(p), cocp = is_cocp(p);
  const int osr = operator_schmidt_rank(p);
  const bool cert = two_eb_rank_certificate(p, kSeed).certified;
  return {cp && !cocp && osr == 3 && cert,
          fmt("is_cp=%g is_cocp=%g rank=%g certificate=%g", cp, cocp, osr, cert)};
}

Outcome criterion5() {
  Rng rng(derive_seed(kSeed, 5));
  int ppt = 0, realign = 0, sep = 0, inconclusive = 0;
  const int total = 200;
  for (int t = 0; t < total; ++t) {
    const QuantumMap t1 = random_ppt_map(3, rng), t2 = random_ppt_map(3, rng);
    const BipartiteState x(compose(t2, t1).choi(), {3, 3});
    const bool a = is_ppt_state(x), b = realignment_criterion(x);
    ppt += a;
    realign += b;
    SepOptions so;
    so.seed = derive_seed(kSeed, 1000 + t);
    const auto dec = heuristic_sep_certify(x, so);
    if (dec && verify_separable_decomposition(x, *dec)) {
      ++sep;
    } else {
      ++inconclusive;
    }
  }
  return {ppt == total && realign == total && sep >= 180,
          fmt("ppt=%g realignment=%g separable=%g/200 inconclusive=%g", ppt, realign, sep, inconclusive)};
}

Outcome criterion6() {
  Rng rng(derive_seed(kSeed, 6));
  int worst = 0, violations = 0;
  for (int m = 0; m < 20; ++m) {
    const QuantumMap t = random_ppt_map(3, rng);
    for (int k = 0; k < 200; ++k) {
      const CVector psi = random_unit_vector(9, rng);
      const int s = sn_lower_fidelity(BipartiteState(apply_local(t, psi * psi.adjoint(), 3), {3, 3}));
      worst = std::max(worst, s);
      if (s > 2) ++violations;
    }
  }
  return {violations == 0, fmt("max_sn_lower=%g violations=%g/4000", worst, violations)};
}

Outcome criterion7() {
  int exceptions = 0, blocks = 0;
  for (int d = 3; d <= 4; ++d) {
    const BipartiteState w(max_entangled(d), {d, d});
    const SubblockAudit a = subblock_sn_audit(w, d);
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        ++blocks;
        if (is_ppt_state(subblock(w, {i, j}))) ++exceptions;
      }
    }
    if (!a.all_npt || !a.consistent) ++exceptions;
  }
  return {exceptions == 0, fmt("sub-blocks=%g exceptions=%g", blocks, exceptions)};
}

Outcome criterion8() {
  int verified = 0, eb = 0, lmi = 0, total = 0;
  double worst = 1e300;
  for (int n = 1; n <= 3; ++n) {
    const RMatrix s = symplectic_form(n);
    for (int t = 0; t < 200; ++t) {
      ++total;
      const GaussianChannel c1 = random_cocp_channel(n, derive_seed(kSeed, 2 * (1000 * n + t)));
      const GaussianChannel c2 = random_cocp_channel(n, derive_seed(kSeed, 2 * (1000 * n + t) + 1));
      const Ppt2Witness w = ppt2_witness(c2, c1);
      verified += w.verified;
      const GaussianChannel c = compose(c2, c1);
      const sdp::GaussianSplit split = is_eb(c);
      const bool feasible = split.sdp.status == sdp::Status::Feasible;
      eb += feasible;
      const RMatrix xsx = c.x() * s * c.x().transpose();
      double m = std::min(w.n_margin, w.m_margin);
      if (feasible) {
        const CMatrix nl = split.n.cast<Complex>() - Complex(0, 1) * xsx.cast<Complex>();
        const CMatrix ml = split.m.cast<Complex>() - Complex(0, 1) * s.cast<Complex>();
        m = std::min({m, embedded_min_eig(nl), embedded_min_eig(ml)});
      }
      worst = std::min(worst, m);
      if (feasible && m >= -1e-8) ++lmi;
    }
  }
  return {verified == total && eb == total && lmi == total,
          fmt("witness_verified=%g eb_feasible=%g lmi_ok=%g of %g", verified, eb, lmi, total) +
              fmt(" worst_min_eig=%.2e", worst)};
}

Outcome criterion9() {
  Rng rng(derive_seed(kSeed, 9));
  const int d = 2;
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const QuantumMap t1 = random_ppt_map(d, rng), t2 = random_ppt_map(d, rng);
    const QuantumMap s = switch_map(t1, t2);
    const QuantumMap ss = compose(s, s);
    const QuantumMap direct = compose(t2, t1);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        const CMatrix e = matrix_unit(d, i, j);
        const CMatrix lhs = ebkit::apply(ss, kron(e, matrix_unit(2, 0, 0)));
        const CMatrix rhs = kron(ebkit::apply(direct, e), matrix_unit(2, 0, 0));
        worst = std::max(worst, max_abs(lhs - rhs) / std::max(max_abs(rhs), 1e-300));
      }
    }
  }
  return {worst <= 1e-9, fmt("pairs=50 max_relative_deviation=%.2e", worst)};
}

Outcome criterion10() {
  Rng rng(derive_seed(kSeed, 10));
  double worst = 0.0;
  int passed = 0, total = 0;
  for (int d = 2; d <= 3; ++d) {
    for (int t = 0; t < 50; ++t) {
      ++total;
      const QuantumMap t1 = random_cp_map(d, d, rng), t2 = random_cp_map(d, d, rng);
      const catalog::IdentityCheck c = catalog::annihilation_identity_check(t1, t2, 4, derive_seed(kSeed, 100 * d + t));
      passed += c.passed;
      worst = std::max(worst, c.max_deviation);
    }
  }
  return {passed == total, fmt("passed=%g/%g max_relative_deviation=%.2e", passed, total, worst)};
}

Outcome criterion11() {
  const QuantumMap p = catalog::choi_map_witness().map;
  sdp::SearchOptions o;
  o.seed = derive_seed(kSeed, 11);
  const sdp::SearchReport r = sdp::counterexample_search(p, o);
  bool ok = r.trace.contains("restarts") && !r.trace["restarts"].empty() && r.trace.contains("verdict");
  bool instance_ok = true;
  if (r.not_cp_verified) {
    instance_ok = r.t.has_value() && is_cp(*r.t) && is_cocp(*r.t) && min_eig(compose(p, *r.t).choi()) < 0.0;
  }
  const bool decomp_ok =
      r.decomposability != "non-decomposable" || (r.decomposition && r.decomposition->witness_verified);
  ok = ok && instance_ok && decomp_ok;
  return {ok, "best_min_eig=" + fmt("%.3e", r.best_value) + " not_cp=" + (r.not_cp_verified ? "1" : "0") +
                  " decomposability=" + r.decomposability};
}

Outcome criterion12() {
  bool ok = true;
  std::string diag;
  for (auto [d, n] : {std::pair{2, 1}, {2, 2}, {3, 1}}) {
    const bool c = is_cocp(catalog::tau_n_map(d, n).map);
    ok = ok && c;
    diag += fmt(" tau(%g,%g)_ppt=%g", d, n, c);
  }
  double dev = 0.0;
  bool a2ppt = true;
  Rng rng(derive_seed(kSeed, 12));
  for (int d = 2; d <= 4; ++d) {
    const QuantumMap a = catalog::antisym_sym_maps(d).a.map;
    const QuantumMap a2 = compose(a, a);
    if (d >= 3) a2ppt = a2ppt && is_ppt_state(BipartiteState(a2.choi(), {d, d}));
    for (int t = 0; t < 10; ++t) {
      const CMatrix x = random_ginibre(d, d, rng);
      const CMatrix expect =
          ((d - 2.0) * x.trace() * CMatrix::Identity(d, d) + x) / double(d * d * (d - 1) * (d - 1));
      dev = std::max(dev, max_abs(ebkit::apply(a2, x) - expect) / max_abs(expect));
    }
  }
  const QuantumMap t = catalog::tau_n_map(2, 2).map;
  const BipartiteState sq(compose(t, t).choi(), {4, 4});
  const bool sqppt = is_ppt_state(sq), sqre = realignment_criterion(sq);
  ok = ok && a2ppt && dev <= 1e-12 && sqppt && sqre;
  return {ok, fmt("A2_ppt(d=3,4)=%g A2_formula_dev=%.2e T2_ppt=%g T2_realignment=%g", a2ppt, dev, sqppt, sqre) + diag};
}

struct Criterion {
  int id;
  const char* title;
  double budget_s;  // 0 when no runtime bound applies
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> all = {
      {1, "Holevo-Werner coCP boundary", 10, criterion1},
      {2, "Holevo-Werner 2-EB ball boundary", 300, criterion2},
      {3, "W_p o W_p entanglement breaking", 0, criterion3},
      {4, "rank-3 example triple check", 1, criterion4},
      {5, "d=3 PPT^2 sweep", 0, criterion5},
      {6, "Schmidt number trimming", 0, criterion6},
      {7, "sub-block structure of omega_d", 0, criterion7},
      {8, "Gaussian PPT^2", 120, criterion8},
      {9, "switch-map equivalence", 0, criterion9},
      {10, "annihilation identity", 0, criterion10},
      {11, "counterexample pipeline smoke test", 0, criterion11},
      {12, "tau^n suite", 0, criterion12},
  };
  int failures = 0;
  for (const Criterion& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs >= c.budget_s) {
      o.passed = false;
      o.detail += fmt(" runtime exceeds %gs", c.budget_s);
    }
    failures += !o.passed;
    std::printf("CRITERION %2d %s: %s [%.2fs] %s\n", c.id, c.title, o.passed ? "PASS" : "FAIL", secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failures, all.size());
  return failures == 0 ? 0 : 1;
}
