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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ebkit/ebkit.h"
#include "json.hpp"

namespace {

using Json = nlohmann::json;

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct Owned {
  char* s = nullptr;
  ~Owned() { ebk_string_free(s); }
};

int report_error(int status) {
  std::cerr << "error: " << ebk_last_error() << " (status " << status << ")\n";
  return kExitError;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool write_json(const std::string& path, const std::string& text) {
  if (path.empty()) return true;
  std::ofstream out(path);
  out << text << "\n";
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

void print_evidence(const Json& report) {
  for (const Json& e : report.at("evidence")) {
    const Json& data = e.at("data");
    std::cout << "  " << e.at("name").get<std::string>();
    if (data.is_object() && data.contains("passed")) {
      std::cout << ": " << (data.at("passed").get<bool>() ? "PASS" : "FAIL");
    }
    std::cout << "  " << data.dump() << "\n";
  }
  std::cout << "verdict: " << report.at("verdict").get<std::string>() << "\n";
}

struct ExampleArgs {
  std::string name;
  int d = 0;
  double p = 0.5;
  int n = 0;
  std::uint64_t seed = 1;
  double tol_psd = 1e-9;
  std::string json_out;
};

int run_example(const ExampleArgs& a) {
  Json opts = {{"p", a.p}, {"seed", a.seed}, {"tol_psd", a.tol_psd}};
  if (a.d > 0) opts["d"] = a.d;
  if (a.n > 0) opts["n"] = a.n;
  Owned report;
  int passed = 0;
  const int st = ebk_verify_example(a.name.c_str(), opts.dump().c_str(), &report.s, &passed);
  if (st != EBK_OK) return report_error(st);
  std::cout << "verify-example " << a.name << "\n";
  print_evidence(Json::parse(report.s));
  if (!write_json(a.json_out, report.s)) return kExitError;
  return passed ? 0 : kExitFail;
}

struct GaussianArgs {
  std::string input;
  std::string second;
  int random_modes = 0;
  bool random_pair = false;
  std::uint64_t seed = 1;
  double tol_psd = 1e-9;
  std::string json_out;
};

struct Channel {
  ebk_gaussian* c = nullptr;
  ~Channel() { ebk_gaussian_free(c); }
};

int load_channel(const std::string& path, Channel& out) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read " << path << "\n";
    return kExitError;
  }
  const int st = ebk_gaussian_from_json(text.c_str(), &out.c);
  return st == EBK_OK ? 0 : report_error(st);
}

int run_gaussian(const GaussianArgs& a) {
  Channel c1, c2;
  if (!a.input.empty()) {
    if (int rc = load_channel(a.input, c1)) return rc;
  } else if (a.random_modes > 0) {
    const int st = ebk_gaussian_random_cocp(a.random_modes, a.seed, &c1.c);
    if (st != EBK_OK) return report_error(st);
  } else {
    std::cerr << "error: one of --input or --random-cocp is required\n";
    return kExitError;
  }
  if (!a.second.empty()) {
    if (int rc = load_channel(a.second, c2)) return rc;
  } else if (a.random_pair) {
    if (a.random_modes <= 0) {
      std::cerr << "error: --pair requires --random-cocp\n";
      return kExitError;
    }
    const int st = ebk_gaussian_random_cocp(a.random_modes, a.seed + 1, &c2.c);
    if (st != EBK_OK) return report_error(st);
  }

  Owned report;
  const bool pair = c2.c != nullptr;
  const int st = pair ? ebk_gaussian_ppt2_report(c2.c, c1.c, a.tol_psd, &report.s)
                      : ebk_gaussian_report(c1.c, a.tol_psd, &report.s);
  if (st != EBK_OK) return report_error(st);
  Json r = Json::parse(report.s);
  Owned ch;
  if (ebk_gaussian_to_json(c1.c, &ch.s) == EBK_OK) r["channel"] = Json::parse(ch.s);
  if (pair) {
    Owned ch2;
    if (ebk_gaussian_to_json(c2.c, &ch2.s) == EBK_OK) r["second"] = Json::parse(ch2.s);
  }
  std::cout << (pair ? "gaussian composition" : "gaussian channel") << "\n";
  print_evidence(r);
  if (!write_json(a.json_out, r.dump(2))) return kExitError;
  if (pair) return r.at("verdict") == "EB-certified" ? 0 : kExitFail;
  return r.at("evidence").at(0).at("data").at("passed").get<bool>() ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement-breaking toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ebk_version()));

  ExampleArgs ex;
  CLI::App* verify = app.add_subcommand("verify-example", "Run the check suite of a named example");
  verify->add_option("name", ex.name, "holevo-werner, rank3, antisym, tau-n, choi-witness or switch")
      ->required();
  verify->add_option("--d", ex.d, "Dimension (suite default when omitted)");
  verify->add_option("--p", ex.p, "Holevo-Werner parameter")->capture_default_str();
  verify->add_option("--n", ex.n, "Tensor power for tau-n");
  verify->add_option("--seed", ex.seed, "Master seed")->capture_default_str();
  verify->add_option("--tol-psd", ex.tol_psd, "Relative PSD tolerance")->capture_default_str();
  verify->add_option("--json-out", ex.json_out, "Write the JSON report to PATH");

  GaussianArgs ga;
  CLI::App* gauss = app.add_subcommand("gaussian", "Analyse a Gaussian channel or a composition of two");
  gauss->add_option("--input", ga.input, "Channel JSON {\"n\",\"X\",\"Y\"}");
  gauss->add_option("--second", ga.second, "Channel applied after the first; reports the composition");
  gauss->add_option("--random-cocp", ga.random_modes, "Generate a random coCP channel on N modes");
  gauss->add_flag("--pair", ga.random_pair, "With --random-cocp, also generate the second channel");
  gauss->add_option("--seed", ga.seed, "Seed for generated channels")->capture_default_str();
  gauss->add_option("--tol-psd", ga.tol_psd, "Relative PSD tolerance")->capture_default_str();
  gauss->add_option("--json-out", ga.json_out, "Write the JSON report to PATH");

  CLI::App* list = app.add_subcommand("list", "List example names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }
  try {
    if (*verify) return run_example(ex);
    if (*gauss) return run_gaussian(ga);
    if (*list) {
      Owned names;
      const int st = ebk_example_names(&names.s);
      if (st != EBK_OK) return report_error(st);
      for (const Json& n : Json::parse(names.s)) std::cout << n.get<std::string>() << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
