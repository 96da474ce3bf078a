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

#include "ebkit/ebkit.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "ebkit/catalog.hpp"
#include "ebkit/choi.hpp"
#include "ebkit/criteria.hpp"
#include "ebkit/errors.hpp"
#include "ebkit/gaussian.hpp"
#include "ebkit/json_io.hpp"
#include "ebkit/sdp_apps.hpp"

struct ebk_map {
  ebkit::QuantumMap map;
};

struct ebk_gaussian {
  ebkit::GaussianChannel channel;
};

namespace {

namespace jio = ebkit::json;
using Json = nlohmann::json;

thread_local std::string last_error;

int fail(int code, const std::string& what) {
  last_error = what;
  return code;
}

template <class F>
int guard(F&& f) {
  try {
    f();
    last_error.clear();
    return EBK_OK;
  } catch (const ebkit::Error& e) {
    return fail(static_cast<int>(e.code()), e.what());
  } catch (const Json::exception& e) {
    return fail(EBK_PARSE_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(EBK_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(EBK_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(EBK_INTERNAL_ERROR, "unknown failure");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw ebkit::Error(ebkit::ErrorCode::DomainError, what);
}

#define EBK_REQUIRE_ARGS(cond)                                    \
  do {                                                            \
    if (!(cond)) return fail(EBK_INVALID_ARGUMENT, "null argument"); \
  } while (0)

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ebkit::RMatrix read_real(const double* v, int rows, int cols) {
  ebkit::RMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = v[i * cols + j];
  }
  return m;
}

Json parse_object(const char* text) {
  if (text == nullptr || *text == '\0') return Json::object();
  Json j = Json::parse(text);
  if (!j.is_object()) throw ebkit::Error(ebkit::ErrorCode::ParseError, "expected a JSON object");
  return j;
}

Json sdp_summary(const ebkit::sdp::SdpResult& r) {
  Json out = {{"status", ebkit::sdp::status_name(r.status)},
              {"iterations", r.residuals.iterations},
              {"primal_infeasibility", r.residuals.primal_infeasibility},
              {"min_block_margin", r.residuals.min_block_margin}};
  if (r.certificate) out["certificate_verified"] = r.certificate->verified;
  return out;
}

Json tolerances(double tol_psd) { return {{"tol_psd", tol_psd}}; }

}  // namespace

extern "C" {

const char* ebk_version(void) { return "0.1.0"; }

const char* ebk_status_name(int status) {
  switch (status) {
    case EBK_OK:
      return "Ok";
    case EBK_INVALID_ARGUMENT:
      return "InvalidArgument";
    case EBK_INTERNAL_ERROR:
      return "InternalError";
    default:
      if (status >= 1 && status <= EBK_PARSE_ERROR) {
        return ebkit::error_code_name(static_cast<ebkit::ErrorCode>(status));
      }
      return "Unknown";
  }
}

const char* ebk_last_error(void) { return last_error.c_str(); }

void ebk_string_free(char* s) { delete[] s; }

int ebk_map_from_choi(int din, int dout, const double* re, const double* im, ebk_map** out) {
  EBK_REQUIRE_ARGS(re && out);
  return guard([&] {
    require(din >= 1 && dout >= 1 && din <= 64 && dout <= 64, "map dimensions must lie in [1, 64]");
    const int n = din * dout;
    ebkit::CMatrix c(n, n);
    c.real() = read_real(re, n, n);
    c.imag() = im ? read_real(im, n, n) : ebkit::RMatrix::Zero(n, n);
    *out = new ebk_map{ebkit::QuantumMap(din, dout, c)};
  });
}

int ebk_map_from_json(const char* json, ebk_map** out) {
  EBK_REQUIRE_ARGS(json && out);
  return guard([&] { *out = new ebk_map{jio::map_from_json(Json::parse(json))}; });
}

int ebk_map_catalog(const char* name, const char* params_json, ebk_map** out) {
  EBK_REQUIRE_ARGS(name && out);
  return guard([&] {
    ebkit::catalog::Params params;
    const Json j = parse_object(params_json);
    for (const auto& [k, v] : j.items()) params.emplace_back(k, v.get<double>());
    *out = new ebk_map{ebkit::catalog::make_named(name, params).map};
  });
}

void ebk_map_free(ebk_map* m) { delete m; }

int ebk_map_to_json(const ebk_map* m, char** json) {
  EBK_REQUIRE_ARGS(m && json);
  return guard([&] { *json = dup_string(jio::map_to_json(m->map).dump()); });
}

int ebk_map_dims(const ebk_map* m, int* din, int* dout) {
  EBK_REQUIRE_ARGS(m && din && dout);
  *din = m->map.din();
  *dout = m->map.dout();
  return EBK_OK;
}

int ebk_map_choi(const ebk_map* m, double* re, double* im) {
  EBK_REQUIRE_ARGS(m && re);
  const ebkit::CMatrix& c = m->map.choi();
  const Eigen::Index n = c.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      re[i * n + j] = c(i, j).real();
      if (im) im[i * n + j] = c(i, j).imag();
    }
  }
  return EBK_OK;
}

int ebk_map_compose(const ebk_map* t2, const ebk_map* t1, ebk_map** out) {
  EBK_REQUIRE_ARGS(t2 && t1 && out);
  return guard([&] { *out = new ebk_map{ebkit::compose(t2->map, t1->map)}; });
}

int ebk_map_is_cp(const ebk_map* m, double tol_psd, int* result) {
  EBK_REQUIRE_ARGS(m && result);
  return guard([&] { *result = ebkit::is_cp(m->map, tol_psd) ? 1 : 0; });
}

int ebk_map_is_cocp(const ebk_map* m, double tol_psd, int* result) {
  EBK_REQUIRE_ARGS(m && result);
  return guard([&] { *result = ebkit::is_cocp(m->map, tol_psd) ? 1 : 0; });
}

int ebk_map_operator_schmidt_rank(const ebk_map* m, int* rank) {
  EBK_REQUIRE_ARGS(m && rank);
  return guard([&] { *rank = ebkit::operator_schmidt_rank(m->map); });
}

int ebk_map_two_eb_report(const ebk_map* m, uint64_t seed, char** json) {
  EBK_REQUIRE_ARGS(m && json);
  return guard([&] {
    const ebkit::QuantumMap& t = m->map;
    std::vector<ebkit::Evidence> ev;
    bool certified = false, refuted = false;
    const ebkit::RankCertificate rc = ebkit::two_eb_rank_certificate(t, seed);
    certified = certified || rc.certified;
    ev.push_back({"rank", {{"certified", rc.certified},
                           {"operator_schmidt_rank", rc.operator_schmidt_rank},
                           {"positivity_evidence", rc.positivity_evidence}}});
    if (t.din() == t.dout()) {
      const double norm = ebkit::ball_deviation_norm(t, 64, seed);
      const bool ball = ebkit::two_eb_ball_certificate(t, 64, seed);
      certified = certified || ball;
      ev.push_back({"depolarizing-ball", {{"certified", ball}, {"deviation_norm", norm}}});
    }
    if (t.din() == 3 && t.dout() == 3) {
      const ebkit::EbVerdict v = ebkit::two_eb_d3_certificate(t, seed);
      certified = certified || v.status == ebkit::EbStatus::EbCertified;
      refuted = v.status == ebkit::EbStatus::NotEbCertified;
      ev.push_back(v.evidence);
    }
    const char* verdict = certified ? "2EB-certified" : refuted ? "not2EB-certified" : "unknown";
    *json = dup_string(jio::report("two-eb", verdict, ev, seed, tolerances(ebkit::kDefaultTolPsd)).dump());
  });
}

int ebk_map_eb_report(const ebk_map* m, uint64_t seed, double tol_psd, char** json) {
  EBK_REQUIRE_ARGS(m && json);
  return guard([&] {
    const ebkit::BipartiteState x(m->map.choi(), m->map.dims(), tol_psd);
    std::vector<ebkit::Evidence> ev;
    const bool ppt = ebkit::is_ppt_state(x, tol_psd);
    const bool realign = ebkit::realignment_criterion(x);
    ev.push_back({"ppt", {{"passed", ppt}}});
    ev.push_back({"realignment", {{"passed", realign}}});
    ebkit::EbStatus status = ebkit::EbStatus::Unknown;
    const ebkit::BipartiteDims d = x.dims();
    const bool low = (d.dA == 2 && (d.dB == 2 || d.dB == 3)) || (d.dA == 3 && d.dB == 2);
    if (low) {
      const ebkit::EbVerdict v = ebkit::sep_decision_low_dim(x, tol_psd);
      status = v.status;
      ev.push_back(v.evidence);
    } else if (!ppt || !realign) {
      status = ebkit::EbStatus::NotEbCertified;
    } else {
      ebkit::SepOptions so;
      so.seed = seed;
      so.tol_psd = tol_psd;
      const auto dec = ebkit::heuristic_sep_certify(x, so);
      if (dec) status = ebkit::EbStatus::EbCertified;
      ev.push_back({"separable-decomposition",
                    {{"found", dec.has_value()},
                     {"terms", dec ? static_cast<int>(dec->a.size()) : 0},
                     {"residual", dec ? dec->residual : -1.0},
                     {"method", dec ? dec->method : "none"}}});
    }
    *json = dup_string(jio::report("eb", ebkit::eb_status_name(status), ev, seed, tolerances(tol_psd)).dump());
  });
}

int ebk_map_decomposability(const ebk_map* m, char** json) {
  EBK_REQUIRE_ARGS(m && json);
  return guard([&] {
    const ebkit::sdp::Decomposition d = ebkit::sdp::decomposability_check(m->map);
    const bool feasible = d.sdp.status == ebkit::sdp::Status::Feasible;
    const char* verdict = feasible ? "decomposable" : d.witness_verified ? "non-decomposable" : "inconclusive";
    std::vector<ebkit::Evidence> ev = {{"sdp", sdp_summary(d.sdp)},
                                       {"ppt-witness",
                                        {{"verified", d.witness_verified}, {"value", d.witness_value}}}};
    *json = dup_string(jio::report("decomposability", verdict, ev, 0, tolerances(ebkit::kDefaultTolPsd)).dump());
  });
}

int ebk_map_counterexample_search(const ebk_map* p, uint64_t seed, int restarts, char** json) {
  EBK_REQUIRE_ARGS(p && json);
  return guard([&] {
    ebkit::sdp::SearchOptions so;
    so.seed = seed;
    if (restarts > 0) so.restarts = restarts;
    const ebkit::sdp::SearchReport r = ebkit::sdp::counterexample_search(p->map, so);
    std::vector<ebkit::Evidence> ev = {
        {"search", {{"best_value", r.best_value}, {"not_cp_verified", r.not_cp_verified}}},
        {"trace", r.trace}};
    if (r.t) ev.push_back({"t", jio::map_to_json(*r.t)});
    *json = dup_string(
        jio::report("counterexample-search", r.decomposability, ev, seed, tolerances(so.tol_psd)).dump());
  });
}

int ebk_gaussian_create(int n, const double* x, const double* y, ebk_gaussian** out) {
  EBK_REQUIRE_ARGS(x && y && out);
  return guard([&] {
    require(n >= 1 && n <= 32, "mode count must lie in [1, 32]");
    *out = new ebk_gaussian{ebkit::GaussianChannel(read_real(x, 2 * n, 2 * n), read_real(y, 2 * n, 2 * n))};
  });
}

int ebk_gaussian_from_json(const char* json, ebk_gaussian** out) {
  EBK_REQUIRE_ARGS(json && out);
  return guard([&] { *out = new ebk_gaussian{jio::gaussian_from_json(Json::parse(json))}; });
}

int ebk_gaussian_random_cocp(int n, uint64_t seed, ebk_gaussian** out) {
  EBK_REQUIRE_ARGS(out);
  return guard([&] {
    require(n >= 1 && n <= 32, "mode count must lie in [1, 32]");
    *out = new ebk_gaussian{ebkit::random_cocp_channel(n, seed)};
  });
}

void ebk_gaussian_free(ebk_gaussian* c) { delete c; }

int ebk_gaussian_to_json(const ebk_gaussian* c, char** json) {
  EBK_REQUIRE_ARGS(c && json);
  return guard([&] { *json = dup_string(jio::gaussian_to_json(c->channel).dump()); });
}

int ebk_gaussian_compose(const ebk_gaussian* c2, const ebk_gaussian* c1, ebk_gaussian** out) {
  EBK_REQUIRE_ARGS(c2 && c1 && out);
  return guard([&] { *out = new ebk_gaussian{ebkit::compose(c2->channel, c1->channel)}; });
}

int ebk_gaussian_report(const ebk_gaussian* c, double tol_psd, char** json) {
  EBK_REQUIRE_ARGS(c && json);
  return guard([&] {
    const ebkit::GaussianChannel& g = c->channel;
    const bool valid = ebkit::is_valid(g, tol_psd);
    const bool cocp = ebkit::is_cocp(g, tol_psd);
    ebkit::sdp::SolverOptions so;
    so.tol_psd = tol_psd;
    const ebkit::sdp::GaussianSplit split = ebkit::is_eb(g, so);
    const bool eb = split.sdp.status == ebkit::sdp::Status::Feasible;
    Json eb_data = sdp_summary(split.sdp);
    if (eb) {
      eb_data["N"] = jio::real_matrix_to_json(split.n);
      eb_data["M"] = jio::real_matrix_to_json(split.m);
    }
    std::vector<ebkit::Evidence> ev = {
        {"valid", {{"passed", valid}, {"min_eig", ebkit::embedded_min_eig(ebkit::validity_matrix(g))}}},
        {"cocp", {{"passed", cocp}, {"min_eig", ebkit::embedded_min_eig(ebkit::cocp_matrix(g))}}},
        {"eb-split", eb_data}};
    const char* verdict = eb ? "EB-certified" : "notEB-certified";
    if (!eb && !(split.sdp.certificate && split.sdp.certificate->verified)) verdict = "unknown";
    *json = dup_string(jio::report("gaussian", verdict, ev, 0, tolerances(tol_psd)).dump());
  });
}

int ebk_gaussian_ppt2_report(const ebk_gaussian* c2, const ebk_gaussian* c1, double tol_psd, char** json) {
  EBK_REQUIRE_ARGS(c2 && c1 && json);
  return guard([&] {
    const ebkit::Ppt2Witness w = ebkit::ppt2_witness(c2->channel, c1->channel, tol_psd);
    ebkit::sdp::SolverOptions so;
    so.tol_psd = tol_psd;
    const ebkit::sdp::GaussianSplit split = ebkit::is_eb(ebkit::compose(c2->channel, c1->channel), so);
    const bool eb = split.sdp.status == ebkit::sdp::Status::Feasible;
    std::vector<ebkit::Evidence> ev = {
        {"explicit-split",
         {{"verified", w.verified}, {"n_margin", w.n_margin}, {"m_margin", w.m_margin},
          {"N", jio::real_matrix_to_json(w.n)}, {"M", jio::real_matrix_to_json(w.m)}}},
        {"eb-split", sdp_summary(split.sdp)}};
    const char* verdict = w.verified && eb ? "EB-certified" : w.verified ? "EB-certified-explicit-only" : "unverified";
    *json = dup_string(jio::report("gaussian-ppt2", verdict, ev, 0, tolerances(tol_psd)).dump());
  });
}

int ebk_example_names(char** json) {
  EBK_REQUIRE_ARGS(json);
  return guard([&] { *json = dup_string(Json(ebkit::catalog::example_names()).dump()); });
}

int ebk_verify_example(const char* name, const char* options_json, char** report_json, int* passed) {
  EBK_REQUIRE_ARGS(name && report_json && passed);
  return guard([&] {
    const Json o = parse_object(options_json);
    ebkit::catalog::SuiteOptions so;
    so.d = o.value("d", 0);
    so.p = o.value("p", 0.5);
    so.n = o.value("n", 0);
    so.seed = o.value("seed", std::uint64_t{1});
    so.tol_psd = o.value("tol_psd", ebkit::kDefaultTolPsd);
    const ebkit::catalog::SuiteResult r = ebkit::catalog::verify_example(name, so);
    *report_json = dup_string(r.report.dump(2));
    *passed = r.passed ? 1 : 0;
  });
}

}  // extern "C"
