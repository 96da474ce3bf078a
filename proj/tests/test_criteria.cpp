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

#include "doctest.h"
#include "ebkit/catalog.hpp"
#include "ebkit/choi.hpp"
#include "ebkit/criteria.hpp"
#include "ebkit/errors.hpp"
#include "ebkit/random.hpp"

using namespace ebkit;

namespace {

CMatrix eye(int d) { return CMatrix::Identity(d, d); }

BipartiteState product_state(int da, int db, Rng& rng) {
  return BipartiteState(kron(random_psd(da, rng), random_psd(db, rng)), {da, db});
}

QuantumMap werner(int d, double p) { return catalog::holevo_werner(d, p).map; }

}  // namespace

TEST_CASE("is_ppt_state oracles") {
  CHECK(is_ppt_state(BipartiteState(eye(9), {3, 3})));
  CHECK_FALSE(is_ppt_state(BipartiteState(max_entangled(2), {2, 2})));
  CHECK_FALSE(is_ppt_state(BipartiteState(catalog::rank3_example().map.choi(), {3, 3})));
}

TEST_CASE("BipartiteState validation") {
  CHECK_THROWS_AS(BipartiteState(eye(6), {2, 2}), Error);
  CMatrix neg = eye(4);
  neg(0, 0) = -1.0;
  CHECK_THROWS_AS(BipartiteState(neg, {2, 2}), Error);
  CMatrix nh = eye(4);
  nh(0, 1) = 1.0;
  CHECK_THROWS_AS(BipartiteState(nh, {2, 2}), Error);
}

TEST_CASE("sep_decision_low_dim") {
  Rng rng(3);
  CHECK(sep_decision_low_dim(BipartiteState(max_entangled(2), {2, 2})).status == EbStatus::NotEbCertified);
  CHECK(sep_decision_low_dim(product_state(2, 3, rng)).status == EbStatus::EbCertified);
  CHECK(sep_decision_low_dim(product_state(3, 2, rng)).status == EbStatus::EbCertified);
  CHECK_THROWS_AS(sep_decision_low_dim(BipartiteState(eye(9), {3, 3})), Error);
  // Blocks (id_2 (x) K)(Y) for a CP and coCP map K on M_3.
  for (int t = 0; t < 10; ++t) {
    const QuantumMap k = random_ppt_map(3, rng);
    const CVector psi = random_unit_vector(6, rng);
    const CMatrix y = apply_local(k, psi * psi.adjoint(), 2);
    const EbVerdict v = sep_decision_low_dim(BipartiteState(y, {2, 3}));
    CHECK(v.status == EbStatus::EbCertified);
  }
}

TEST_CASE("sep_decision_low_dim agrees with PPT on random 2x3 states") {
  Rng rng(17);
  int agree = 0;
  for (int t = 0; t < 1000; ++t) {
    const int rank = 1 + static_cast<int>(rng() % 6);
    const BipartiteState x(random_psd(6, rng, rank), {2, 3});
    const bool ppt = is_ppt_state(x);
    const EbVerdict v = sep_decision_low_dim(x);
    agree += (v.status == EbStatus::EbCertified) == ppt ? 1 : 0;
  }
  CHECK(agree == 1000);
}

TEST_CASE("realignment_criterion oracles") {
  Rng rng(5);
  CHECK(realignment_criterion(product_state(3, 3, rng)));
  for (int d = 2; d <= 4; ++d) {
    CHECK_FALSE(realignment_criterion(BipartiteState(max_entangled(d) / double(d), {d, d})));
    CHECK(realignment_criterion(BipartiteState(eye(d * d) / double(d * d), {d, d})));
  }
}

TEST_CASE("sn_lower_fidelity oracles") {
  for (int d = 2; d <= 4; ++d) {
    CHECK(sn_lower_fidelity(BipartiteState(max_entangled(d) / double(d), {d, d})) == d);
    CHECK(sn_lower_fidelity(BipartiteState(eye(d * d) / double(d * d), {d, d})) == 1);
  }
  const double eps = 0.01;
  const CMatrix x = (1 - eps) * max_entangled(3) / 3.0 + eps * eye(9) / 9.0;
  CHECK(sn_lower_fidelity(BipartiteState(x, {3, 3})) == 3);
  CHECK_THROWS_AS(entangled_fraction(BipartiteState(eye(6), {2, 3})), Error);
}

TEST_CASE("sn_upper_pt_invariant oracles") {
  CHECK(sn_upper_pt_invariant(BipartiteState(eye(9), {3, 3})) == 2);
  CHECK_FALSE(sn_upper_pt_invariant(BipartiteState(max_entangled(3), {3, 3})).has_value());
  Rng rng(7);
  for (int t = 0; t < 10; ++t) {
    const CMatrix r = eye(9) + 0.1 * random_psd(9, rng) / 9.0;
    const CMatrix sym = (r + partial_transpose(r, {3, 3}, Factor::A)) / 2.0;
    CHECK(sn_upper_pt_invariant(BipartiteState(sym, {3, 3})) == 2);
  }
  CHECK_THROWS_AS(sn_upper_pt_invariant(BipartiteState(eye(6), {3, 2})), Error);
}

TEST_CASE("sn_bounds is monotone on random 3x3 states") {
  Rng rng(19);
  for (int t = 0; t < 100; ++t) {
    const int rank = 1 + static_cast<int>(rng() % 9);
    const SnVerdict v = sn_bounds(BipartiteState(random_psd(9, rng, rank), {3, 3}));
    CHECK(v.lower >= 1);
    CHECK(v.lower <= v.upper);
    CHECK(v.upper <= 3);
  }
}

TEST_CASE("subblock oracles") {
  Rng rng(23);
  const BipartiteState w3(max_entangled(3), {3, 3});
  const BipartiteState full = subblock(w3, {0, 1, 2});
  CHECK(max_abs(full.mat() - w3.mat()) == 0.0);
  const BipartiteState y = subblock(w3, {0, 1});
  CHECK(y.dims().dA == 2);
  CHECK(y.dims().dB == 3);
  CHECK_FALSE(is_ppt_state(y));
  CHECK(is_ppt_state(subblock(product_state(3, 3, rng), {0, 2})));
  CHECK_THROWS_AS(subblock(w3, {0, 3}), Error);
  CHECK_THROWS_AS(subblock(w3, {1, 1}), Error);
}

TEST_CASE("subblock_sn_audit oracles") {
  const SubblockAudit a3 = subblock_sn_audit(BipartiteState(max_entangled(3), {3, 3}), 3);
  CHECK(a3.entries.size() == 3);
  CHECK(a3.all_npt);
  CHECK(a3.consistent);
  const SubblockAudit a4 = subblock_sn_audit(BipartiteState(max_entangled(4), {4, 4}), 4);
  CHECK(a4.entries.size() == 6);
  CHECK(a4.all_npt);
  Rng rng(29);
  const SubblockAudit s = subblock_sn_audit(product_state(3, 3, rng), 1);
  CHECK(s.consistent);
  CHECK_THROWS_AS(subblock_sn_audit(BipartiteState(eye(9), {3, 3}), 3), Error);
}

TEST_CASE("sub-block consistency on random states with fidelity bound 3") {
  Rng rng(31);
  int count = 0;
  while (count < 50) {
    const CVector psi = random_unit_vector(9, rng);
    const CMatrix r = random_psd(9, rng);
    const CMatrix x = 0.8 * max_entangled(3) / 3.0 + 0.1 * psi * psi.adjoint() + 0.1 * r / r.trace().real();
    const BipartiteState st(x, {3, 3});
    if (sn_lower_fidelity(st) < 3) continue;
    ++count;
    const SubblockAudit a = subblock_sn_audit(st, 3);
    CHECK(a.all_npt);
    CHECK(a.consistent);
  }
}

TEST_CASE("k_positivity_falsify oracles") {
  CHECK_FALSE(k_positivity_falsify(identity_map(3), 1).has_value());
  CHECK_FALSE(k_positivity_falsify(identity_map(3), 3).has_value());
  CHECK_FALSE(k_positivity_falsify(transposition_map(3), 1).has_value());
  const auto w = k_positivity_falsify(transposition_map(3), 2);
  REQUIRE(w.has_value());
  CHECK(verify_k_witness(transposition_map(3), *w, 2));
  const QuantumMap tw = compose(transposition_map(3), werner(3, 0.9));
  const auto w2 = k_positivity_falsify(tw, 2);
  REQUIRE(w2.has_value());
  CHECK(verify_k_witness(tw, *w2, 2));
  CHECK_FALSE(k_positivity_falsify(compose(transposition_map(3), werner(3, 0.45)), 2).has_value());
}

TEST_CASE("k-positivity witnesses are sound") {
  Rng rng(37);
  for (int t = 0; t < 20; ++t) {
    const QuantumMap m(3, 3, random_hermitian(9, rng));
    for (int k = 1; k <= 2; ++k) {
      const auto w = k_positivity_falsify(m, k, 8, 100, derive_seed(5, t));
      if (!w) continue;
      const RVector s = schmidt_coefficients(*w, {3, 3});
      CHECK(s(2) <= 1e-10);
      if (k == 1) CHECK(s(1) <= 1e-10);
      CHECK(std::abs(w->norm() - 1.0) < 1e-10);
      CHECK((w->adjoint() * m.choi() * *w)(0).real() < 0.0);
      CHECK(verify_k_witness(m, *w, k));
    }
  }
}

TEST_CASE("two_eb_ball_certificate oracles") {
  CHECK(two_eb_ball_certificate(depolarizing_map(3)));
  CHECK(ball_deviation_norm(depolarizing_map(3)) < 1e-12);
  CHECK(two_eb_ball_certificate(werner(3, 0.4)));
  CHECK_FALSE(two_eb_ball_certificate(werner(3, 0.6)));
  CHECK(two_eb_ball_certificate(werner(5, 0.5)));
  CHECK(ball_deviation_norm(werner(4, 0.3)) == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("johnston_block_check oracles") {
  CHECK(johnston_block_check(eye(3), CMatrix::Zero(3, 3), eye(3)));
  CHECK_FALSE(johnston_block_check(matrix_unit(2, 0, 0), matrix_unit(2, 0, 1), matrix_unit(2, 1, 1)));
  CHECK_THROWS_AS(johnston_block_check(eye(2), 2.0 * eye(2), eye(2)), Error);
  const QuantumMap p = werner(3, 0.4);
  Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    const CVector psi = random_unit_vector(6, rng);
    const CMatrix z = psi * psi.adjoint();
    const EigenDecomposition e = eig_hermitian(partial_trace(z, {2, 3}, Factor::B));
    const CMatrix m = e.vectors * e.values.cwiseSqrt().cwiseInverse().asDiagonal() * e.vectors.adjoint();
    const CMatrix n = kron(m, eye(3)) * z * kron(m, eye(3));
    const CMatrix pr = ebkit::apply(p, n.block(0, 0, 3, 3));
    const CMatrix px = ebkit::apply(p, n.block(0, 3, 3, 3));
    const CMatrix ps = ebkit::apply(p, n.block(3, 3, 3, 3));
    CHECK(johnston_block_check(pr, px, ps));
  }
}

TEST_CASE("two_eb_rank_certificate oracles") {
  const RankCertificate r = two_eb_rank_certificate(catalog::rank3_example().map);
  CHECK(r.certified);
  CHECK(r.operator_schmidt_rank == 3);
  CHECK(r.positivity_evidence == "cp");
  const RankCertificate id = two_eb_rank_certificate(identity_map(3));
  CHECK_FALSE(id.certified);
  CHECK(id.operator_schmidt_rank == 9);
  CHECK(two_eb_rank_certificate(depolarizing_map(3)).certified);
}

TEST_CASE("two_eb_d3_certificate oracles") {
  Rng rng(43);
  for (int t = 0; t < 5; ++t) {
    CHECK(two_eb_d3_certificate(random_ppt_map(3, rng)).status == EbStatus::EbCertified);
  }
  CHECK(two_eb_d3_certificate(werner(3, 0.9)).status == EbStatus::NotEbCertified);
  CHECK(two_eb_d3_certificate(depolarizing_map(3)).status == EbStatus::EbCertified);
  CHECK_THROWS_AS(two_eb_d3_certificate(identity_map(2)), Error);
}

TEST_CASE("d4_ptinv_2eb_certificate oracles") {
  const CMatrix i16 = eye(16);
  const QuantumMap s(4, 4, i16 + flip(4) + max_entangled(4));
  CHECK(d4_ptinv_2eb_certificate(s, depolarizing_map(4)));
  CHECK_FALSE(d4_ptinv_2eb_certificate(QuantumMap(4, 4, i16 + flip(4)), depolarizing_map(4)));
  CHECK_FALSE(d4_ptinv_2eb_certificate(identity_map(4), depolarizing_map(4)));
  CHECK_FALSE(d4_ptinv_2eb_certificate(s, identity_map(4)));
  CHECK_THROWS_AS(d4_ptinv_2eb_certificate(identity_map(3), identity_map(3)), Error);
  // Schmidt number audit of the PT-invariant S.
  const BipartiteState cs(s.choi(), {4, 4});
  CHECK(sn_upper_pt_invariant(cs) == 3);
  CHECK(sn_lower_fidelity(cs) <= 3);
}

TEST_CASE("bound calculators") {
  CHECK(sn_trim_bound(3, 2) == 2);
  CHECK(sn_trim_bound(2, 2) == 1);
  CHECK(sn_trim_bound(5, 3) == 3);
  CHECK(iteration_count(3, 2) == 2);
  CHECK(iteration_count(4, 2) == 3);
  CHECK(iteration_count(2, 2) == 1);
  CHECK_THROWS_AS(iteration_count(3, 1), Error);
  CHECK_THROWS_AS(iteration_count(3, 4), Error);
  const AltIterationBound b = alt_iteration_bound(4, 3);
  CHECK(b.compositions == 7);
  CHECK(b.sn_bound == 1);
  CHECK(b.conjectural);
  CHECK(alt_iteration_bound(2, 1).compositions == 1);
  CHECK(alt_iteration_bound(2, 1).sn_bound == 1);
  CHECK(alt_iteration_bound(5, 2).compositions == 3);
  CHECK(alt_iteration_bound(5, 2).sn_bound == 3);
  CHECK_THROWS_AS(alt_iteration_bound(3, 3), Error);
}

TEST_CASE("trimming consistency for CP and coCP maps") {
  Rng rng(47);
  const QuantumMap t = random_ppt_map(3, rng);
  for (int k = 0; k < 200; ++k) {
    const CVector psi = random_unit_vector(9, rng);
    const CMatrix y = apply_local(t, psi * psi.adjoint(), 3);
    CHECK(sn_lower_fidelity(BipartiteState(y, {3, 3})) <= sn_trim_bound(3, 2));
  }
}

TEST_CASE("heuristic_sep_certify oracles") {
  const BipartiteState id(eye(9), {3, 3});
  const auto a = heuristic_sep_certify(id);
  REQUIRE(a.has_value());
  CHECK(a->a.size() == 1);
  CHECK(verify_separable_decomposition(id, *a));
  CHECK_FALSE(heuristic_sep_certify(BipartiteState(max_entangled(2), {2, 2})).has_value());
  const QuantumMap w = werner(3, 0.8);
  const BipartiteState sq(compose(w, w).choi(), {3, 3});
  const auto b = heuristic_sep_certify(sq);
  REQUIRE(b.has_value());
  CHECK(verify_separable_decomposition(sq, *b));
}

TEST_CASE("separable decompositions are sound") {
  Rng rng(53);
  for (int t = 0; t < 5; ++t) {
    const QuantumMap t1 = random_ppt_map(3, rng), t2 = random_ppt_map(3, rng);
    const BipartiteState x(compose(t2, t1).choi(), {3, 3});
    const auto dec = heuristic_sep_certify(x);
    if (!dec) continue;
    CHECK(dec->residual <= 1e-7);
    CHECK(dec->a.size() == dec->b.size());
    CMatrix sum = CMatrix::Zero(9, 9);
    for (size_t i = 0; i < dec->a.size(); ++i) {
      CHECK(is_psd(dec->a[i]));
      CHECK(is_psd(dec->b[i]));
      sum += kron(dec->a[i], dec->b[i]);
    }
    CHECK(max_abs(sum - x.mat()) <= 1e-7 * max_abs(x.mat()));
  }
}
