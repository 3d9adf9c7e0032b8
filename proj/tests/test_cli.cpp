// Copyright 2026 The prodstate Authors
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


#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "prodstate/cli.hpp"

using prodstate::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

std::string data(const std::string& name) {
  const char* dir = std::getenv("PRODSTATE_TEST_DATA");
  REQUIRE(dir != nullptr);
  return (std::filesystem::path(dir) / name).string();
}

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

}  // namespace

TEST_CASE("schmidt report") {
  const auto r = call({"schmidt", data("bell.json"), "--cut", "1"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "lambdas: 0.5 0.5"));
  CHECK(has_line(r.out, "rank: 2"));
  CHECK(call({"schmidt", data("bell.json"), "--cut", "2"}).code == 3);
  CHECK(call({"schmidt", data("rho_cc.json")}).code == 3);
}

TEST_CASE("check verdicts and exit codes") {
  auto r = call({"check", data("ghz.json")});
  CHECK(r.code == 1);
  CHECK(has_line(r.out, "verdict: entangled"));
  CHECK(has_line(r.out, "violation: 0.25"));
  CHECK(has_line(r.out, "witness.1: 1+0i 0+0i"));

  r = call({"check", data("product.json")});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "verdict: product"));
  CHECK(has_line(r.out, "factor.1: 0.707106781187+0i 0.707106781187+0i"));
  CHECK(has_line(r.out, "factor.3: 0+0i 1+0i"));

  r = call({"check", data("rho_cc.json")});
  CHECK(r.code == 1);
  CHECK(has_line(r.out, "coefficients: 0.5 0.5"));

  r = call({"check", data("product_mixed.json")});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "factor.1: 0.6+0i 0+0i ; 0+0i 0.4+0i"));
}

TEST_CASE("error exit codes") {
  auto r = call({"check", data("trace09.json")});
  CHECK(r.code == 3);
  CHECK(r.err.find("trace") != std::string::npos);
  CHECK(call({"check", data("truncated.json")}).code == 6);
  CHECK(call({"check", data("missing.json")}).code == 5);
  r = call({"frobnicate"});
  CHECK(r.code == 2);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(call({"check", data("bell.json"), "--bogus"}).code == 2);
  CHECK(call({}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("probe, subsets, independence, sample, oracle") {
  auto r = call({"probe", data("bell.json"), "--seed", "7", "--probes", "200"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "max_violation: 0.25"));

  r = call({"subsets", data("bell_pair.json"), "--probes", "50"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "subset[2,3]: 0.25"));
  CHECK(has_line(r.out, "subset[1,2,3]: 0.25"));

  r = call({"independence", data("rho_cc.json"), "--observables", data("zz.json")});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "table: 0.5 0 0 0.5"));
  CHECK(has_line(r.out, "independence_violation: 0.25"));

  r = call({"sample", data("rho_cc.json"), "--observables", data("zz.json"), "--count", "100", "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "samples: 100"));
  CHECK(r.out.find("count[-1,1]") == std::string::npos);

  r = call({"oracle", data("ghz.json")});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "agree: true"));
  CHECK(has_line(r.out, "grid_max_violation: 0.375"));

  r = call({"opschmidt", data("bell.json"), "--hermitian"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "rank: 4"));
}

TEST_CASE("outputs are deterministic") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"schmidt", data("bell.json")},
           {"check", data("ghz.json")},
           {"probe", data("rho_cc.json"), "--seed", "7"},
           {"sample", data("bell.json"), "--seed", "7", "--count", "50", "--raw"}}) {
    const auto a = call(args);
    const auto b = call(args);
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
  }
  CHECK(call({"probe", data("rho_cc.json"), "--seed", "7", "--no-grid"}).out !=
        call({"probe", data("rho_cc.json"), "--seed", "8", "--no-grid"}).out);
}

TEST_CASE("json format") {
  const auto r = call({"check", data("ghz.json"), "--format", "json"});
  CHECK(r.code == 1);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["verdict"] == "entangled");
  CHECK(doc["violation"].get<double>() == doctest::Approx(0.25));
  CHECK(call({"check", data("ghz.json"), "--format", "xml"}).code == 2);
}
