// Copyright 2026 The padicl Authors
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

#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "padicl/cli.hpp"
#include "padicl/gamma.hpp"
#include "padicl/json.hpp"
#include "padicl/verify.hpp"

using namespace padic;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("gamma at 1") {
  auto r = run({"gamma", "--p", "5", "--prec", "4", "--at", "1"});
  CHECK(r.code == 0);
  auto j = r.json();
  CHECK(j["value"]["rep"] == "624");
  CHECK(j["guaranteed_prec"] == 4);
  CHECK(j["route"] == "morita-product");
}

TEST_CASE("gamma derivatives") {
  auto r = run({"gamma", "--p", "5", "--prec", "5", "--at", "0", "--deriv", "2", "--log"});
  CHECK(r.code == 0);
  CHECK(r.json()["value"]["rep"] == "0");
  CHECK(run({"gamma", "--p", "5", "--at", "1/3", "--deriv", "1"}).code == 0);
  CHECK(run({"gamma", "--p", "5", "--at", "2", "--log"}).code == 2);
  CHECK(run({"gamma", "--p", "5", "--at", "1/5"}).code == 2);
}

TEST_CASE("delta 2 is zero") {
  auto r = run({"delta", "--p", "7", "--prec", "6", "--s", "2"});
  CHECK(r.code == 0);
  auto j = r.json();
  CHECK(j["value"]["rep"] == "0");
  CHECK(j["guaranteed_prec"].get<long>() >= 6);
}

TEST_CASE("dwork-coeffs") {
  auto j = run({"dwork-coeffs", "--p", "3", "--count", "10", "--mod-prec", "3"}).json();
  CHECK(j["exact"].size() == 10);
  CHECK(j["exact"][2]["num"] == "1");
  CHECK(j["exact"][2]["den"] == "2");
  CHECK(j["reduced"]["prec"] == 3);
  CHECK(j["reduced"]["coeffs"][2]["rep"] == "14");
  CHECK(j["reduced"]["coeffs"][9]["shift"] == 2);
}

TEST_CASE("series records round-trip") {
  ExactRat q(-7, 12);
  CHECK(rat_from_json(to_json(q)) == q);
  CHECK(rat_from_json(Json("3/9")) == ExactRat(1, 3));
  PadicApprox a(5, 4, 123);
  CHECK(approx_from_json(to_json(a)) == a);
}

TEST_CASE("mahler-eval and dcoef") {
  auto m = run({"mahler-eval", "--p", "5", "--at", "5"});
  CHECK(m.code == 0);
  CHECK(m.json()["value"]["rep"] == gamma_morita(5, 5, 6).rep().get_str());
  CHECK(run({"mahler-eval", "--p", "5", "--at", "5", "--kmax", "3"}).code == 1);
  CHECK(run({"mahler-eval", "--p", "5", "--at", "5", "--table-len", "3"}).code == 1);
  auto d = run({"dcoef", "--p", "5", "--s", "1"});
  CHECK(d.code == 0);
  CHECK(d.json()["guaranteed_prec"].get<long>() >= 6);
}

TEST_CASE("lp routes and characters") {
  auto r = run({"lp", "--p", "5", "--s", "3", "--route", "both"});
  CHECK(r.code == 0);
  CHECK(r.json()["agree"] == true);
  CHECK(r.json()["results"].size() == 2);
  CHECK(run({"lp", "--p", "7", "--s", "2", "--route", "both", "--char", "kronecker:-3"}).code == 0);
  CHECK(run({"lp", "--p", "3", "--s", "2", "--char", "kronecker:-3"}).code == 2);
  CHECK(run({"lp", "--p", "5", "--s", "2", "--char", "kronecker:9"}).code == 2);
  CHECK(run({"lp", "--p", "5", "--s", "2", "--route", "sideways"}).code == 2);

  const std::string path = "test_cli_char.json";
  {
    std::ofstream f(path);
    f << R"({"modulus": 4, "values": [0, 1, 0, -1], "label": "chi_4"})";
  }
  auto viafile = run({"lp", "--p", "5", "--s", "2", "--route", "both", "--char", "file:" + path});
  auto viakron = run({"lp", "--p", "5", "--s", "2", "--route", "limit", "--char", "kronecker:-4"});
  CHECK(viafile.code == 0);
  CHECK(viafile.json()["character"] == "chi_4");
  CHECK(viafile.json()["results"][0]["value"] == viakron.json()["results"][0]["value"]);
  {
    std::ofstream f(path);
    f << R"({"modulus": 4, "values": [0, 1, 1, -1]})";
  }
  CHECK(run({"lp", "--p", "5", "--s", "2", "--char", "file:" + path}).code == 2);
  std::remove(path.c_str());
  CHECK(run({"lp", "--p", "5", "--s", "2", "--char", "file:/nonexistent"}).code == 2);
}

TEST_CASE("zeta-p and frobenius-entry") {
  auto z = run({"zeta-p", "--p", "7", "--s", "4"});
  CHECK(z.code == 0);
  CHECK(z.json()["value"]["rep"] == "0");
  auto f = run({"frobenius-entry", "--p", "7"});
  CHECK(f.code == 0);
  CHECK(f.json()["agree"] == true);
  CHECK(f.json()["via_delta"] == f.json()["via_zeta"]);
  auto five = run({"frobenius-entry", "--p", "5"});
  CHECK(five.code == 2);
  CHECK(five.err.find("not 5-adic integers") != std::string::npos);
}

TEST_CASE("usage errors") {
  auto r = run({"gamma", "--at", "1", "--bogus"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(run({}).code == 2);
  CHECK(run({"nosuch"}).code == 2);
  CHECK(run({"gamma", "--p", "9", "--at", "1"}).code == 2);
  CHECK(run({"gamma", "--prec", "0", "--at", "1"}).code == 2);
  CHECK(run({"gamma", "--at", "x/y"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify") {
  auto r = run({"verify", "--p", "3", "--prec", "6"});
  CHECK(r.code == 0);
  auto j = r.json();
  CHECK(j["pass"] == true);
  CHECK(j["identities"].size() == identity_ids().size());
  for (const auto& i : j["identities"]) {
    INFO(i["id"].get<std::string>());
    CHECK(i["status"] == "pass");
    CHECK(i.contains("statement"));
    CHECK(!i.contains("elapsed_ms"));
  }
  CHECK(!j.contains("meta"));
  // byte-identical reruns
  CHECK(run({"verify", "--p", "3", "--prec", "6"}).out == r.out);
  auto timed = run({"verify", "--p", "5", "--only", "dwork.recursion", "--timing"}).json();
  CHECK(timed["identities"].size() == 1);
  CHECK(timed["meta"]["elapsed_ms"].contains("dwork.recursion"));
  CHECK(run({"verify", "--only", "no.such"}).code == 2);
}
