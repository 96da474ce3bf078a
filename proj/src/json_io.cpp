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

#include "ebkit/json_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>

#include "ebkit/errors.hpp"

namespace ebkit::json {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

double scalar(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_decimal(v.get<std::string>());
  parse_error("expected a number or decimal string");
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

int count_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 1000000) {
    parse_error(std::string("field '") + key + "' must be a nonnegative integer");
  }
  return v.get<int>();
}

RMatrix grid(const json& j, int rows, int cols, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) parse_error(std::string(what) + ": row count");
  RMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols) {
      parse_error(std::string(what) + ": column count");
    }
    for (int c = 0; c < cols; ++c) m(i, c) = scalar(j[i][c]);
  }
  return m;
}

json rows_of(const RMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    out.push_back(row);
  }
  return out;
}

}  // namespace

double parse_decimal(const std::string& text) {
  if (text.empty()) parse_error("empty decimal string");
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end != begin + text.size() || errno == ERANGE || !std::isfinite(v)) {
    parse_error("invalid decimal '" + text + "'");
  }
  return v;
}

json matrix_to_json(const CMatrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", rows_of(m.real())}, {"im", rows_of(m.imag())}};
}

CMatrix matrix_from_json(const json& j) {
  const int rows = count_field(j, "rows"), cols = count_field(j, "cols");
  if (rows < 1 || cols < 1) parse_error("matrix dimensions must be positive");
  CMatrix m(rows, cols);
  m.real() = grid(field(j, "re"), rows, cols, "re");
  m.imag() = j.contains("im") ? grid(j.at("im"), rows, cols, "im") : RMatrix::Zero(rows, cols);
  return m;
}

json real_matrix_to_json(const RMatrix& m) { return rows_of(m); }

RMatrix real_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) parse_error("expected a nested array");
  return grid(j, static_cast<int>(j.size()), static_cast<int>(j[0].size()), "matrix");
}

json map_to_json(const QuantumMap& t) {
  return {{"kind", "choi"}, {"din", t.din()}, {"dout", t.dout()}, {"choi", matrix_to_json(t.choi())}};
}

QuantumMap map_from_json(const json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "choi") {
    return QuantumMap(count_field(j, "din"), count_field(j, "dout"), matrix_from_json(field(j, "choi")));
  }
  if (kind == "kraus") {
    const json& ops = field(j, "ops");
    if (!ops.is_array() || ops.empty()) parse_error("kraus: 'ops' must be a non-empty array");
    std::vector<CMatrix> ks;
    for (const json& o : ops) ks.push_back(matrix_from_json(o));
    return map_from_kraus(ks);
  }
  parse_error("unknown map kind '" + kind + "'");
}

json gaussian_to_json(const GaussianChannel& c) {
  return {{"n", c.modes()}, {"X", rows_of(c.x())}, {"Y", rows_of(c.y())}};
}

GaussianChannel gaussian_from_json(const json& j) {
  const int n = count_field(j, "n");
  if (n < 1) parse_error("gaussian: n must be positive");
  return GaussianChannel(grid(field(j, "X"), 2 * n, 2 * n, "X"), grid(field(j, "Y"), 2 * n, 2 * n, "Y"));
}

json problem_to_json(const sdp::SdpProblem& p) {
  json blocks = json::array();
  for (const auto& b : p.blocks) blocks.push_back({{"name", b.name}, {"dim", b.dim}, {"hermitian", b.hermitian}});
  json eqs = json::array();
  for (const auto& e : p.equalities) {
    json terms = json::array();
    for (const auto& [blk, coeff] : e.terms) terms.push_back({{"block", blk}, {"coefficient", rows_of(coeff)}});
    eqs.push_back({{"terms", terms}, {"rhs", e.rhs}});
  }
  json obj = json::array();
  for (const RMatrix& c : p.objective) obj.push_back(rows_of(c));
  return {{"blocks", blocks}, {"equalities", eqs}, {"objective", obj}};
}

sdp::SdpProblem problem_from_json(const json& j) {
  sdp::SdpProblem p;
  for (const json& b : field(j, "blocks")) {
    p.blocks.push_back({field(b, "name").get<std::string>(), count_field(b, "dim"),
                        b.value("hermitian", false)});
  }
  for (const json& e : field(j, "equalities")) {
    sdp::Equality eq;
    for (const json& t : field(e, "terms")) {
      const int blk = count_field(t, "block");
      if (blk >= static_cast<int>(p.blocks.size())) parse_error("equality references unknown block");
      eq.terms.emplace_back(blk, real_matrix_from_json(field(t, "coefficient")));
    }
    eq.rhs = scalar(field(e, "rhs"));
    p.equalities.push_back(std::move(eq));
  }
  if (j.contains("objective")) {
    for (const json& c : j.at("objective")) p.objective.push_back(real_matrix_from_json(c));
  }
  return p;
}

json result_to_json(const sdp::SdpResult& r) {
  json primal = json::array();
  for (const RMatrix& x : r.primal) primal.push_back(rows_of(x));
  json out = {{"status", sdp::status_name(r.status)},
              {"message", r.message},
              {"objective", r.objective},
              {"primal", primal},
              {"residuals",
               {{"primal_infeasibility", r.residuals.primal_infeasibility},
                {"dual_infeasibility", r.residuals.dual_infeasibility},
                {"relative_gap", r.residuals.relative_gap},
                {"min_block_margin", r.residuals.min_block_margin},
                {"eigen_margin", r.residuals.eigen_margin},
                {"iterations", r.residuals.iterations}}}};
  json dual = json::array();
  for (Eigen::Index i = 0; i < r.dual.size(); ++i) dual.push_back(r.dual(i));
  out["dual"] = dual;
  if (r.certificate) {
    json w = json::array();
    for (Eigen::Index i = 0; i < r.certificate->weights.size(); ++i) w.push_back(r.certificate->weights(i));
    out["certificate"] = {{"weights", w},
                          {"rhs_value", r.certificate->rhs_value},
                          {"min_slack_eig", r.certificate->min_slack_eig},
                          {"verified", r.certificate->verified}};
  }
  return out;
}

json evidence_to_json(const Evidence& e) { return {{"name", e.name}, {"data", e.data}}; }

json report(const std::string& op, const std::string& verdict, const std::vector<Evidence>& evidence,
            std::uint64_t seed, const json& tolerances) {
  json ev = json::array();
  for (const Evidence& e : evidence) ev.push_back(evidence_to_json(e));
  return {{"op", op}, {"verdict", verdict}, {"evidence", ev}, {"seed", seed}, {"tolerances", tolerances}};
}

}  // namespace ebkit::json
