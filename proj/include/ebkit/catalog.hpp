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
#include <utility>
#include <vector>

#include "ebkit/choi.hpp"
#include "ebkit/criteria.hpp"
#include "ebkit/linalg.hpp"
#include "json.hpp"

namespace ebkit::catalog {

using Params = std::vector<std::pair<std::string, double>>;

struct NamedMap {
  std::string name;
  Params params;
  QuantumMap map;
};

/// W_p(X) = Tr[X] I - p X^T on M_d; d >= 2, p in [-1, 1].
NamedMap holevo_werner(int d, double p);

struct Rank3Data {
  CMatrix rho1, rho2, h0, h1, h2;
};

/// The printed constants, parsed from decimal strings.
Rank3Data rank3_data();
/// C_P = H0 (x) I + rho1 (x) H1 + rho2 (x) H2.
NamedMap rank3_example();

struct AntisymSym {
  NamedMap a;  // Choi alpha_d = (I - F)/(d(d-1))
  NamedMap s;  // Choi sigma_d = (I + F)/(d(d+1))
};
AntisymSym antisym_sym_maps(int d);

struct TauWeights {
  double alpha = 0.0;  // weight on alpha^{(x)n}
  double mixed = 0.0;  // weight on (alpha/(d+2) + (d+1) sigma/(d+2))^{(x)n}
};
TauWeights tau_n_weights(int d, int n);
/// Map on M_{d^n} with Choi tau^n; d^n <= 9.
NamedMap tau_n_map(int d, int n);

/// X -> diag(2x11 + x33, 2x22 + x11, 2x33 + x22) - X on M_3.
NamedMap choi_map_witness();

/// Rebuild a catalog map from its name and parameters.
NamedMap make_named(const std::string& name, const Params& params);

nlohmann::json named_to_json(const NamedMap& m);
NamedMap named_from_json(const nlohmann::json& j);

struct IdentityCheck {
  bool passed = false;
  double max_deviation = 0.0;  // relative
  int trials = 0;
};

/// Compares (T1 (x) T2)(psi psi^dag) with
/// [id (x) (T2 o Ad_A o theta o T1^* o theta)](omega) for random pure psi = (id (x) A)|Omega>.
IdentityCheck annihilation_identity_check(const QuantumMap& t1, const QuantumMap& t2, int trials,
                                          std::uint64_t seed = 1, double tol = 1e-9);

struct SuiteOptions {
  int d = 0;        // 0 selects the suite default
  double p = 0.5;
  int n = 0;        // 0 selects the suite default
  std::uint64_t seed = 1;
  double tol_psd = kDefaultTolPsd;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::vector<Evidence> checks;  // each data object carries "passed"
  nlohmann::json report;
};

const std::vector<std::string>& example_names();
/// Runs the full check suite of a named example; throws DomainError for unknown names.
SuiteResult verify_example(const std::string& name, const SuiteOptions& opts = {});

}  // namespace ebkit::catalog
