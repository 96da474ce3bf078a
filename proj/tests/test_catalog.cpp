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

#include <cmath>

#include "doctest.h"
#include "ebkit/catalog.hpp"
#include "ebkit/criteria.hpp"
#include "ebkit/errors.hpp"
#include "ebkit/json_io.hpp"
#include "ebkit/random.hpp"
#include "ebkit/sdp_apps.hpp"

using namespace ebkit;
using namespace ebkit::catalog;
using Json = nlohmann::json;
namespace jio = ebkit::json;

namespace {

CMatrix eye(int d) { return CMatrix::Identity(d, d); }

bool ppt(const QuantumMap& t) { return is_ppt_state(BipartiteState(t.choi(), t.dims())); }

}  // namespace

TEST_CASE("holevo_werner construction") {
  for (int d = 2; d <= 4; ++d) {
    const NamedMap w = holevo_werner(d, 0.3);
    CHECK(w.name == "holevo-werner");
    CHECK(max_abs(w.map.choi() - (eye(d * d) - 0.3 * flip(d))) == 0.0);
    Rng rng(1);
    const CMatrix x = random_ginibre(d, d, rng);
    const CMatrix expect = x.trace() * eye(d) - 0.3 * CMatrix(x.transpose());
    CHECK(max_abs(ebkit::apply(w.map, x) - expect) < 1e-13);
  }
  CHECK_THROWS_AS(holevo_werner(1, 0.0), Error);
  CHECK_THROWS_AS(holevo_werner(3, 1.5), Error);
  CHECK_THROWS_AS(holevo_werner(3, -1.01), Error);
}

TEST_CASE("holevo_werner copositivity boundary") {
  for (int d = 2; d <= 5; ++d) {
    for (int k = -100; k <= 100; ++k) {
      const double p = k / 100.0;
      if (std::abs(p - 1.0 / d) < 1e-6) continue;
      CHECK(is_cocp(holevo_werner(d, p).map) == (p <= 1.0 / d));
      CHECK(is_cp(holevo_werner(d, p).map));
    }
  }
}

TEST_CASE("holevo_werner W_1 scaled equals A") {
  for (int d = 2; d <= 5; ++d) {
    const CMatrix a = holevo_werner(d, 1.0).map.choi() / double(d * (d - 1));
    CHECK(max_abs(a - antisym_sym_maps(d).a.map.choi()) < 1e-15);
  }
}

TEST_CASE("rank3 constants") {
  const Rank3Data r = rank3_data();
  CHECK(r.h0(0, 0).real() == 2.4);
  CHECK(r.h0(0, 1).real() == -5.3);
  CHECK(r.h1(0, 1) == Complex(-25, 3.2));
  CHECK(r.h1(1, 2) == Complex(-174.4, -146.2));
  CHECK(r.h2(0, 2) == Complex(-33.4, -44));
  CHECK(r.h2(2, 1) == Complex(146.2, -174.4));
  CHECK(r.rho2(1, 2) == Complex(0, -1.0 / 6.0));
  CHECK(is_hermitian(r.h0, 0.0));
  CHECK(is_hermitian(r.h1, 0.0));
  CHECK(is_hermitian(r.h2, 0.0));
  CHECK(std::abs(r.rho1.trace().real() - 1.0) < 1e-15);
  CHECK(std::abs(r.rho2.trace().real() - 1.0) < 1e-15);
  CHECK(is_psd(r.rho1));
  CHECK(is_psd(r.rho2));
}

TEST_CASE("rank3 example") {
  const NamedMap p = rank3_example();
  CHECK(is_cp(p.map));
  CHECK_FALSE(is_cocp(p.map));
  CHECK_FALSE(is_ppt_state(BipartiteState(p.map.choi(), {3, 3})));
  CHECK(operator_schmidt_rank(p.map) == 3);
  CHECK(two_eb_rank_certificate(p.map).certified);
}

TEST_CASE("antisymmetric and symmetric maps") {
  for (int d = 2; d <= 4; ++d) {
    const AntisymSym m = antisym_sym_maps(d);
    CHECK(std::abs(m.a.map.choi().trace().real() - 1.0) < 1e-14);
    CHECK(std::abs(m.s.map.choi().trace().real() - 1.0) < 1e-14);
    CHECK(is_cp(m.a.map));
    CHECK(is_cp(m.s.map));
  }
  const int d = 3;
  const AntisymSym m = antisym_sym_maps(d);
  const QuantumMap a2 = compose(m.a.map, m.a.map);
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    const CMatrix x = random_ginibre(d, d, rng);
    const CMatrix expect = ((d - 2.0) * x.trace() * eye(d) + x) / double(d * d * (d - 1) * (d - 1));
    CHECK(max_abs(ebkit::apply(a2, x) - expect) <= 1e-12 * max_abs(expect));
  }
  CHECK(ppt(a2));
  for (int dd = 2; dd <= 3; ++dd) {
    const BipartiteState s(antisym_sym_maps(dd).s.map.choi(), {dd, dd});
    const auto dec = heuristic_sep_certify(s);
    REQUIRE(dec.has_value());
    CHECK(verify_separable_decomposition(s, *dec));
  }
  CHECK_THROWS_AS(antisym_sym_maps(1), Error);
}

TEST_CASE("tau_n map") {
  for (auto [d, n] : {std::pair{2, 1}, {2, 2}, {3, 1}}) {
    const NamedMap t = tau_n_map(d, n);
    const TauWeights w = tau_n_weights(d, n);
    CHECK(w.alpha + w.mixed == 1.0);
    CHECK(w.alpha == doctest::Approx(std::pow(d, n) / (std::pow(d, n) + std::pow(d + 2, n))));
    CHECK(t.map.din() == static_cast<int>(std::pow(d, n)));
    CHECK(is_cp(t.map));
    CHECK(is_cocp(t.map));
    CHECK(std::abs(t.map.choi().trace().real() - 1.0) < 1e-13);
  }
  // n = 1 lies in span{I, F}.
  for (int d = 2; d <= 3; ++d) {
    const CMatrix c = tau_n_map(d, 1).map.choi();
    const double w = tau_n_weights(d, 1).alpha;
    const double a = w / (d * (d - 1.0)) + (1 - w) * (1.0 / (d + 2)) / (d * (d - 1.0));
    const double s = (1 - w) * ((d + 1.0) / (d + 2)) / (d * (d + 1.0));
    CHECK(max_abs(c - (a + s) * eye(d * d) - (s - a) * flip(d)) < 1e-15);
  }
  const NamedMap t = tau_n_map(2, 2);
  const BipartiteState sq(compose(t.map, t.map).choi(), {4, 4});
  CHECK(is_ppt_state(sq));
  CHECK(realignment_criterion(sq));
  CHECK_THROWS_AS(tau_n_map(2, 4), Error);
  CHECK_THROWS_AS(tau_n_map(4, 2), Error);
  CHECK_THROWS_AS(tau_n_map(1, 1), Error);
  CHECK_THROWS_AS(tau_n_map(2, 0), Error);
}

TEST_CASE("choi map witness") {
  const NamedMap c = choi_map_witness();
  const CMatrix x = (CMatrix(3, 3) << 1, 2, 3, 4, 5, 6, 7, 8, 9).finished();
  CMatrix expect = -x;
  expect(0, 0) += 2.0 * 1 + 9;
  expect(1, 1) += 2.0 * 5 + 1;
  expect(2, 2) += 2.0 * 9 + 5;
  CHECK(max_abs(ebkit::apply(c.map, x) - expect) < 1e-14);
  CHECK_FALSE(k_positivity_falsify(c.map, 1).has_value());
  CHECK(min_eig(c.map.choi()) < 0.0);
  const sdp::Decomposition dec = sdp::decomposability_check(c.map);
  CHECK(dec.sdp.status == sdp::Status::Infeasible);
  CHECK(dec.witness_verified);
}

TEST_CASE("annihilation identity") {
  const IdentityCheck triv = annihilation_identity_check(identity_map(3), identity_map(3), 5);
  CHECK(triv.passed);
  CHECK(triv.max_deviation < 1e-14);
  Rng rng(3);
  for (int d = 2; d <= 3; ++d) {
    for (int t = 0; t < 5; ++t) {
      const QuantumMap t1 = random_cp_map(d, d, rng), t2 = random_cp_map(d, d, rng);
      CHECK(annihilation_identity_check(t1, t2, 4, derive_seed(9, t)).passed);
    }
    CHECK(annihilation_identity_check(depolarizing_map(d), random_cp_map(d, d, rng), 4).passed);
  }
  CHECK(annihilation_identity_check(random_cp_map(2, 3, rng), random_cp_map(3, 2, rng), 4).passed);
}

TEST_CASE("catalog maps round-trip through JSON") {
  const std::vector<NamedMap> maps = {holevo_werner(3, 0.37),  rank3_example(), antisym_sym_maps(3).a,
                                      antisym_sym_maps(3).s,    tau_n_map(2, 2), choi_map_witness()};
  for (const NamedMap& m : maps) {
    const NamedMap back = named_from_json(Json::parse(named_to_json(m).dump()));
    CHECK(back.name == m.name);
    CHECK(back.params == m.params);
    CHECK(back.map.choi() == m.map.choi());
    const NamedMap rebuilt = make_named(m.name, m.params);
    CHECK(rebuilt.map.choi() == m.map.choi());
  }
  CHECK_THROWS_AS(make_named("nope", {}), Error);
  CHECK_THROWS_AS(make_named("holevo-werner", {{"d", 3}}), Error);
}

TEST_CASE("JSON parsing") {
  const Json m = Json::parse(R"({"rows":2,"cols":2,"re":[["0.1","2"],[3,"-4.5e-1"]]})");
  const CMatrix a = jio::matrix_from_json(m);
  CHECK(a(0, 0).real() == 0.1);
  CHECK(a(1, 1).real() == -0.45);
  CHECK(a(1, 1).imag() == 0.0);
  CHECK_THROWS_AS(jio::parse_decimal("1.0x"), Error);
  CHECK_THROWS_AS(jio::parse_decimal(""), Error);
  CHECK_THROWS_AS(jio::matrix_from_json(Json::parse(R"({"rows":2,"cols":2,"re":[[1]]})")), Error);
  const Json k = {{"kind", "kraus"},
                  {"ops", {jio::matrix_to_json(eye(2)), jio::matrix_to_json(CMatrix::Zero(2, 2))}}};
  CHECK(max_abs(jio::map_from_json(k).choi() - max_entangled(2)) < 1e-15);
  CHECK_THROWS_AS(jio::map_from_json(Json::parse(R"({"kind":"other"})")), Error);
  const GaussianChannel g(RMatrix::Identity(2, 2) * 0.5, RMatrix::Identity(2, 2));
  const GaussianChannel gb = jio::gaussian_from_json(Json::parse(jio::gaussian_to_json(g).dump()));
  CHECK(gb.x() == g.x());
  CHECK(gb.y() == g.y());
}

TEST_CASE("verify_example suites") {
  for (const std::string& name : example_names()) {
    const SuiteResult r = verify_example(name);
    CHECK(r.report["op"] == "verify-example:" + name);
    CHECK(r.report["evidence"].size() == r.checks.size());
    for (const Evidence& e : r.checks) {
      if (e.name == "cocp_iff_p_ge_1_over_d") continue;
      INFO(name << ": " << e.name << " " << e.data.dump());
      CHECK(e.data.at("passed").get<bool>());
    }
  }
  CHECK_THROWS_AS(verify_example("nope"), Error);
}

TEST_CASE("A squared at d = 2 is a multiple of the identity map") {
  const QuantumMap a = antisym_sym_maps(2).a.map;
  const QuantumMap a2 = compose(a, a);
  CHECK(max_abs(a2.choi() - max_entangled(2) / 4.0) < 1e-15);
  CHECK_FALSE(ppt(a2));
}
