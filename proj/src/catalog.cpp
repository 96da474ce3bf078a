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

#include "ebkit/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "ebkit/errors.hpp"
#include "ebkit/json_io.hpp"
#include "ebkit/random.hpp"
#include "ebkit/sdp_apps.hpp"

namespace ebkit::catalog {

using nlohmann::json;
namespace jio = ebkit::json;

namespace {

using Entry = const char*;

CMatrix decimal_matrix(const Entry (&re)[3][3], const Entry (&im)[3][3]) {
  CMatrix m(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = Complex(jio::parse_decimal(re[i][j]), jio::parse_decimal(im[i][j]));
  }
  return m;
}

double param(const Params& params, const std::string& key) {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  throw Error(ErrorCode::DomainError, "missing parameter '" + key + "'");
}

int int_param(const Params& params, const std::string& key) {
  const double v = param(params, key);
  if (v != std::floor(v) || std::abs(v) > 1e6) {
    throw Error(ErrorCode::DomainError, "parameter '" + key + "' must be an integer");
  }
  return static_cast<int>(v);
}

QuantumMap tensor_power(const QuantumMap& t, int n) {
  QuantumMap out = t;
  for (int k = 1; k < n; ++k) out = tensor(out, t);
  return out;
}

double relative_deviation(const CMatrix& a, const CMatrix& b) {
  return max_abs(a - b) / std::max(max_abs(b), 1e-300);
}

Evidence check(const std::string& name, bool passed, json data = json::object()) {
  data["passed"] = passed;
  return {name, std::move(data)};
}

bool json_round_trip(const NamedMap& m) {
  const NamedMap back = named_from_json(json::parse(named_to_json(m).dump()));
  return back.name == m.name && back.params == m.params && back.map.din() == m.map.din() &&
         back.map.dout() == m.map.dout() && back.map.choi() == m.map.choi();
}

bool separable(const CMatrix& c, int d, std::uint64_t seed, double tol_psd, json& data) {
  SepOptions so;
  so.seed = seed;
  so.tol_psd = tol_psd;
  const auto dec = heuristic_sep_certify(BipartiteState(c, {d, d}, tol_psd), so);
  data["sep_terms"] = dec ? static_cast<int>(dec->a.size()) : 0;
  data["sep_residual"] = dec ? dec->residual : -1.0;
  data["sep_method"] = dec ? dec->method : "none";
  return dec.has_value();
}

using Suite = std::function<void(const SuiteOptions&, std::vector<Evidence>&)>;

void suite_holevo_werner(const SuiteOptions& o, std::vector<Evidence>& out) {
  const int d = o.d > 0 ? o.d : 3;
  const NamedMap w = holevo_werner(d, o.p);
  out.push_back(check("cp", is_cp(w.map, o.tol_psd), {{"d", d}, {"p", o.p}}));

  int mismatches = 0;
  json first = nullptr;
  for (int k = -100; k <= 100; ++k) {
    const double p = k / 100.0;
    if (std::abs(p - 1.0 / d) < 1e-6) continue;
    const bool got = is_cocp(holevo_werner(d, p).map, o.tol_psd);
    if (got != (p >= 1.0 / d)) {
      if (mismatches++ == 0) first = {{"p", p}, {"is_cocp", got}};
    }
  }
  out.push_back(check("cocp_iff_p_ge_1_over_d", mismatches == 0,
                      {{"d", d}, {"mismatches", mismatches}, {"first_mismatch", first}}));

  if (d >= 3) {
    const bool cert = two_eb_ball_certificate(w.map, 64, o.seed);
    const bool excluded = std::abs(o.p - 0.5) < 1e-3;
    out.push_back(check("ball_certificate_iff_p_le_half", excluded || cert == (o.p <= 0.5),
                        {{"certificate", cert}, {"ball_norm", ball_deviation_norm(w.map, 64, o.seed)},
                         {"excluded_near_boundary", excluded}}));
  }

  const CMatrix a1 = holevo_werner(d, 1.0).map.choi() / static_cast<double>(d * (d - 1));
  const double dev = relative_deviation(a1, antisym_sym_maps(d).a.map.choi());
  out.push_back(check("w1_scaled_equals_a", dev <= 1e-14, {{"deviation", dev}}));

  const CMatrix sq = compose(w.map, w.map).choi();
  json sq_data = {{"ppt", is_ppt_state(BipartiteState(sq, {d, d}, o.tol_psd), o.tol_psd)}};
  bool ok = sq_data["ppt"].get<bool>();
  if (d <= 4) ok = separable(sq, d, o.seed, o.tol_psd, sq_data) && ok;
  out.push_back(check("square_entanglement_breaking", ok, sq_data));
  out.push_back(check("json_round_trip", json_round_trip(w)));
}

void suite_rank3(const SuiteOptions& o, std::vector<Evidence>& out) {
  const NamedMap p = rank3_example();
  out.push_back(check("cp", is_cp(p.map, o.tol_psd), {{"min_eig", min_eig(p.map.choi())}}));
  const CMatrix gamma = partial_transpose(p.map.choi(), p.map.dims(), Factor::B);
  out.push_back(check("not_cocp", !is_cocp(p.map, o.tol_psd), {{"pt_min_eig", min_eig(gamma)}}));
  const int osr = operator_schmidt_rank(p.map);
  out.push_back(check("operator_schmidt_rank_3", osr == 3, {{"operator_schmidt_rank", osr}}));
  const RankCertificate rc = two_eb_rank_certificate(p.map, o.seed);
  out.push_back(check("two_eb_rank_certificate", rc.certified,
                      {{"positivity_evidence", rc.positivity_evidence},
                       {"operator_schmidt_rank", rc.operator_schmidt_rank}}));
  out.push_back(check("json_round_trip", json_round_trip(p)));
}

void suite_antisym(const SuiteOptions& o, std::vector<Evidence>& out) {
  const int d = o.d > 0 ? o.d : 3;
  const AntisymSym m = antisym_sym_maps(d);
  const QuantumMap a2 = compose(m.a.map, m.a.map);
  Rng rng(derive_seed(o.seed, 0));
  double dev = 0.0;
  const double scale = 1.0 / (static_cast<double>(d * d) * (d - 1) * (d - 1));
  for (int t = 0; t < 8; ++t) {
    const CMatrix x = random_ginibre(d, d, rng);
    const CMatrix expect = scale * ((d - 2.0) * x.trace() * CMatrix::Identity(d, d) + x);
    dev = std::max(dev, relative_deviation(ebkit::apply(a2, x), expect));
  }
  out.push_back(check("a_squared_formula", dev <= 1e-12, {{"deviation", dev}, {"trials", 8}}));
  if (d >= 3) {
    out.push_back(check("a_squared_ppt", is_ppt_state(BipartiteState(a2.choi(), {d, d}, o.tol_psd), o.tol_psd)));
  }
  if (d <= 3) {
    json sd;
    const bool sep = separable(m.s.map.choi(), d, o.seed, o.tol_psd, sd);
    out.push_back(check("sigma_separable", sep, sd));
  }
  const CMatrix a1 = holevo_werner(d, 1.0).map.choi() / static_cast<double>(d * (d - 1));
  const double wdev = relative_deviation(a1, m.a.map.choi());
  out.push_back(check("w1_scaled_equals_a", wdev <= 1e-14, {{"deviation", wdev}}));
  out.push_back(check("json_round_trip", json_round_trip(m.a) && json_round_trip(m.s)));
}

void suite_tau_n(const SuiteOptions& o, std::vector<Evidence>& out) {
  const int d = o.d > 0 ? o.d : 2;
  const int n = o.n > 0 ? o.n : 2;
  const NamedMap t = tau_n_map(d, n);
  const int dn = t.map.din();
  const TauWeights w = tau_n_weights(d, n);
  out.push_back(check("weights_sum_to_one", w.alpha + w.mixed == 1.0, {{"alpha", w.alpha}, {"mixed", w.mixed}}));
  out.push_back(check("cp", is_cp(t.map, o.tol_psd)));
  out.push_back(check("cocp", is_cocp(t.map, o.tol_psd),
                      {{"pt_min_eig", min_eig(partial_transpose(t.map.choi(), t.map.dims(), Factor::B))}}));
  if (n == 1) {
    const CMatrix c = t.map.choi();
    const CMatrix f = flip(d);
    const Complex x = (c.trace() * double(d) - (c * f).trace()) / double(d * d * d - d);
    const Complex y = ((c * f).trace() * double(d) - c.trace()) / double(d * d * d - d);
    const double dev = max_abs(c - x * CMatrix::Identity(d * d, d * d) - y * f);
    out.push_back(check("span_identity_flip", dev <= 1e-14, {{"deviation", dev}}));
  }
  const BipartiteState sq(compose(t.map, t.map).choi(), {dn, dn}, o.tol_psd);
  out.push_back(check("square_ppt", is_ppt_state(sq, o.tol_psd)));
  out.push_back(check("square_realignment", realignment_criterion(sq),
                      {{"realigned_trace_norm", trace_norm(realign(sq.mat(), sq.dims()))}}));
  out.push_back(check("json_round_trip", json_round_trip(t)));
}

void suite_choi_witness(const SuiteOptions& o, std::vector<Evidence>& out) {
  const NamedMap c = choi_map_witness();
  const auto w = k_positivity_falsify(c.map, 1, 32, 200, o.seed);
  out.push_back(check("positive", !w.has_value()));
  out.push_back(check("not_cp", min_eig(c.map.choi()) < 0.0, {{"min_eig", min_eig(c.map.choi())}}));
  sdp::SolverOptions so;
  so.tol_psd = o.tol_psd;
  const sdp::Decomposition dec = sdp::decomposability_check(c.map, so);
  out.push_back(check("not_decomposable",
                      dec.sdp.status == sdp::Status::Infeasible && dec.witness_verified,
                      {{"status", sdp::status_name(dec.sdp.status)}, {"witness_value", dec.witness_value},
                       {"witness_verified", dec.witness_verified}}));
  out.push_back(check("json_round_trip", json_round_trip(c)));
}

void suite_switch(const SuiteOptions& o, std::vector<Evidence>& out) {
  const int d = o.d > 0 ? o.d : 2;
  Rng rng(derive_seed(o.seed, 0));
  const int trials = 10;
  bool cp = true, cocp = true;
  double dev = 0.0;
  for (int t = 0; t < trials; ++t) {
    const QuantumMap t1 = random_ppt_map(d, rng), t2 = random_ppt_map(d, rng);
    const QuantumMap s = switch_map(t1, t2);
    cp = cp && is_cp(s, o.tol_psd);
    cocp = cocp && is_cocp(s, o.tol_psd);
    const QuantumMap ss = compose(s, s);
    const CMatrix y = random_hermitian(d, rng);
    const CMatrix lhs = ebkit::apply(ss, kron(y, matrix_unit(2, 0, 0)));
    const CMatrix rhs = kron(ebkit::apply(compose(t2, t1), y), matrix_unit(2, 0, 0));
    dev = std::max(dev, relative_deviation(lhs, rhs));
  }
  out.push_back(check("switch_cp", cp, {{"trials", trials}}));
  out.push_back(check("switch_cocp", cocp, {{"trials", trials}}));
  out.push_back(check("square_reproduces_composition", dev <= 1e-9, {{"deviation", dev}}));
  const QuantumMap sid = switch_map(identity_map(d), identity_map(d));
  const QuantumMap sid2 = compose(sid, sid);
  double iddev = 0.0;
  for (int k = 0; k < 2; ++k) {
    const CMatrix x = kron(random_ginibre(d, d, rng), matrix_unit(2, k, k));
    iddev = std::max(iddev, relative_deviation(ebkit::apply(sid2, x), x));
  }
  out.push_back(check("identity_switch_squared", iddev <= 1e-13, {{"deviation", iddev}}));
}

const std::map<std::string, Suite>& suites() {
  static const std::map<std::string, Suite> s = {
      {"holevo-werner", suite_holevo_werner}, {"rank3", suite_rank3},
      {"antisym", suite_antisym},             {"tau-n", suite_tau_n},
      {"choi-witness", suite_choi_witness},   {"switch", suite_switch}};
  return s;
}

}  // namespace

NamedMap holevo_werner(int d, double p) {
  if (d < 2) throw Error(ErrorCode::DomainError, "holevo_werner: d must be at least 2");
  if (!(p >= -1.0 && p <= 1.0)) throw Error(ErrorCode::DomainError, "holevo_werner: p must lie in [-1, 1]");
  const CMatrix choi = CMatrix::Identity(d * d, d * d) - p * flip(d);
  return {"holevo-werner", {{"d", d}, {"p", p}}, QuantumMap(d, d, choi)};
}

Rank3Data rank3_data() {
  static const Entry rho1_re[3][3] = {{"2", "1", "0"}, {"1", "2", "1"}, {"0", "1", "2"}};
  static const Entry rho1_im[3][3] = {{"0", "0", "0"}, {"0", "0", "0"}, {"0", "0", "0"}};
  static const Entry rho2_re[3][3] = {{"2", "1", "0"}, {"1", "2", "0"}, {"0", "0", "2"}};
  static const Entry rho2_im[3][3] = {{"0", "0", "0"}, {"0", "0", "-1"}, {"0", "1", "0"}};
  static const Entry h0_re[3][3] = {{"2.4", "-5.3", "0"}, {"-5.3", "26.7", "0"}, {"0", "0", "28.8"}};
  static const Entry h1_re[3][3] = {
      {"10.6", "-25", "44"}, {"-25", "54.6", "-174.4"}, {"44", "-174.4", "44"}};
  static const Entry h1_im[3][3] = {{"0", "3.2", "33.4"}, {"-3.2", "0", "-146.2"}, {"-33.4", "146.2", "0"}};
  static const Entry h2_re[3][3] = {
      {"10.6", "-25", "-33.4"}, {"-25", "54.6", "146.2"}, {"-33.4", "146.2", "44"}};
  static const Entry h2_im[3][3] = {{"0", "-3.2", "-44"}, {"3.2", "0", "174.4"}, {"44", "-174.4", "0"}};
  Rank3Data r;
  r.rho1 = decimal_matrix(rho1_re, rho1_im) / 6.0;
  r.rho2 = decimal_matrix(rho2_re, rho2_im) / 6.0;
  r.h0 = decimal_matrix(h0_re, rho1_im);
  r.h1 = decimal_matrix(h1_re, h1_im);
  r.h2 = decimal_matrix(h2_re, h2_im);
  return r;
}

NamedMap rank3_example() {
  const Rank3Data r = rank3_data();
  const CMatrix choi = kron(r.h0, CMatrix(CMatrix::Identity(3, 3))) + kron(r.rho1, r.h1) + kron(r.rho2, r.h2);
  return {"rank3", {}, QuantumMap(3, 3, choi)};
}

AntisymSym antisym_sym_maps(int d) {
  if (d < 2) throw Error(ErrorCode::DomainError, "antisym_sym_maps: d must be at least 2");
  const CMatrix id = CMatrix::Identity(d * d, d * d);
  const CMatrix f = flip(d);
  const CMatrix alpha = (id - f) / static_cast<double>(d * (d - 1));
  const CMatrix sigma = (id + f) / static_cast<double>(d * (d + 1));
  return {{"antisym-A", {{"d", d}}, QuantumMap(d, d, alpha)}, {"sym-S", {{"d", d}}, QuantumMap(d, d, sigma)}};
}

TauWeights tau_n_weights(int d, int n) {
  const double a = std::pow(static_cast<double>(d), n);
  const double b = std::pow(static_cast<double>(d + 2), n);
  TauWeights w;
  w.alpha = a / (a + b);
  w.mixed = 1.0 - w.alpha;
  return w;
}

NamedMap tau_n_map(int d, int n) {
  if (d < 2 || n < 1) throw Error(ErrorCode::DomainError, "tau_n_map: need d >= 2 and n >= 1");
  int dn = 1;
  for (int k = 0; k < n; ++k) {
    dn *= d;
    if (dn > 9) throw Error(ErrorCode::DomainError, "tau_n_map: d^n must not exceed 9");
  }
  const AntisymSym as = antisym_sym_maps(d);
  const QuantumMap mixed = add(scale(as.a.map, 1.0 / (d + 2)), scale(as.s.map, (d + 1.0) / (d + 2)));
  const TauWeights w = tau_n_weights(d, n);
  const QuantumMap t = add(scale(tensor_power(as.a.map, n), w.alpha), scale(tensor_power(mixed, n), w.mixed));
  return {"tau-n", {{"d", d}, {"n", n}}, t};
}

NamedMap choi_map_witness() {
  const QuantumMap m = choi_from_action(
      [](const CMatrix& x) {
        CMatrix y = -x;
        y(0, 0) += 2.0 * x(0, 0) + x(2, 2);
        y(1, 1) += 2.0 * x(1, 1) + x(0, 0);
        y(2, 2) += 2.0 * x(2, 2) + x(1, 1);
        return y;
      },
      3, 3);
  return {"choi-witness", {}, m};
}

NamedMap make_named(const std::string& name, const Params& params) {
  if (name == "holevo-werner") return holevo_werner(int_param(params, "d"), param(params, "p"));
  if (name == "rank3") return rank3_example();
  if (name == "antisym-A") return antisym_sym_maps(int_param(params, "d")).a;
  if (name == "sym-S") return antisym_sym_maps(int_param(params, "d")).s;
  if (name == "tau-n") return tau_n_map(int_param(params, "d"), int_param(params, "n"));
  if (name == "choi-witness") return choi_map_witness();
  throw Error(ErrorCode::DomainError, "unknown catalog map '" + name + "'");
}

json named_to_json(const NamedMap& m) {
  json params = json::array();
  for (const auto& [k, v] : m.params) params.push_back({{"name", k}, {"value", v}});
  return {{"name", m.name}, {"params", params}, {"map", jio::map_to_json(m.map)}};
}

NamedMap named_from_json(const json& j) {
  if (!j.is_object() || !j.contains("name") || !j.contains("map")) {
    throw Error(ErrorCode::ParseError, "named map: expected 'name' and 'map'");
  }
  Params params;
  for (const json& p : j.value("params", json::array())) {
    params.emplace_back(p.at("name").get<std::string>(), p.at("value").get<double>());
  }
  return {j.at("name").get<std::string>(), params, jio::map_from_json(j.at("map"))};
}

IdentityCheck annihilation_identity_check(const QuantumMap& t1, const QuantumMap& t2, int trials,
                                          std::uint64_t seed, double tol) {
  if (trials < 1) throw Error(ErrorCode::DomainError, "annihilation_identity_check: trials must be positive");
  const int d1 = t1.din(), d2 = t1.dout(), d3 = t2.din();
  const QuantumMap both = tensor(t1, t2);
  const QuantumMap inner = compose(transposition_map(d1), compose(adjoint(t1), transposition_map(d2)));
  Rng rng(seed);
  IdentityCheck out;
  out.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const CVector psi = random_unit_vector(d1 * d3, rng);
    const CMatrix a = coefficient_matrix(psi, {d1, d3}).transpose();
    const CMatrix lhs = ebkit::apply(both, psi * psi.adjoint());
    const CMatrix rhs = compose(t2, compose(conjugation_map(a), inner)).choi();
    out.max_deviation = std::max(out.max_deviation, relative_deviation(lhs, rhs));
  }
  out.passed = out.max_deviation <= tol;
  return out;
}

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names = {"holevo-werner", "rank3", "antisym", "tau-n", "choi-witness",
                                                 "switch"};
  return names;
}

SuiteResult verify_example(const std::string& name, const SuiteOptions& opts) {
  const auto it = suites().find(name);
  if (it == suites().end()) throw Error(ErrorCode::DomainError, "unknown example '" + name + "'");
  SuiteResult r;
  r.name = name;
  it->second(opts, r.checks);
  r.passed = std::all_of(r.checks.begin(), r.checks.end(),
                         [](const Evidence& e) { return e.data.at("passed").get<bool>(); });
  const json tol = {{"tol_psd", opts.tol_psd}};
  r.report = jio::report("verify-example:" + name, r.passed ? "pass" : "fail", r.checks, opts.seed, tol);
  json params = {{"p", opts.p}};
  if (opts.d > 0) params["d"] = opts.d;
  if (opts.n > 0) params["n"] = opts.n;
  r.report["params"] = params;
  return r;
}

}  // namespace ebkit::catalog
