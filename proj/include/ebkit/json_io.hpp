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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ebkit/choi.hpp"
#include "ebkit/criteria.hpp"
#include "ebkit/gaussian.hpp"
#include "ebkit/linalg.hpp"
#include "ebkit/sdp.hpp"
#include "json.hpp"

namespace ebkit::json {

using nlohmann::json;

/// Full-consumption decimal parse; throws ParseError.
double parse_decimal(const std::string& text);

/// {"rows":n,"cols":m,"re":[[...]],"im":[[...]]}; "im" may be omitted on
/// input, entries may be numbers or decimal strings.
json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

json real_matrix_to_json(const RMatrix& m);
/// Plain nested arrays of numbers or decimal strings.
RMatrix real_matrix_from_json(const json& j);

/// {"kind":"choi","din":..,"dout":..,"choi":<matrix>}; input also accepts
/// {"kind":"kraus","ops":[<matrix>...]}.
json map_to_json(const QuantumMap& t);
QuantumMap map_from_json(const json& j);

/// {"n":..,"X":[[...]],"Y":[[...]]}.
json gaussian_to_json(const GaussianChannel& c);
GaussianChannel gaussian_from_json(const json& j);

json problem_to_json(const sdp::SdpProblem& p);
sdp::SdpProblem problem_from_json(const json& j);
json result_to_json(const sdp::SdpResult& r);

json evidence_to_json(const Evidence& e);

/// {"op","verdict","evidence":[{"name","data"}],"seed","tolerances"}.
json report(const std::string& op, const std::string& verdict, const std::vector<Evidence>& evidence,
            std::uint64_t seed, const json& tolerances);

}  // namespace ebkit::json
