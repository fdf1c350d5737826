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

#include "padicl/json.hpp"

namespace padic {

namespace {

Json series_json(const std::vector<ExactRat>& coeffs, long p) {
  Json arr = Json::array();
  for (const auto& c : coeffs) arr.push_back(to_json(c));
  return Json{{"p", p}, {"prec", nullptr}, {"order", coeffs.size()}, {"coeffs", std::move(arr)}};
}

BigInt big_from(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long>());
  if (!j.is_string()) throw UsageError("expected a decimal integer");
  BigInt r;
  if (r.set_str(j.get<std::string>(), 10) != 0) throw UsageError("bad integer: " + j.get<std::string>());
  return r;
}

}  // namespace

Json to_json(const ExactRat& q) { return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

Json to_json(const PadicApprox& a) { return Json{{"p", a.p()}, {"prec", a.prec()}, {"rep", a.rep().get_str()}}; }

Json to_json(const PadicNumber& x) {
  if (x.is_exact()) {
    Json j{{"p", x.p()}, {"prec", nullptr}};
    j["num"] = x.approx().get_num().get_str();
    j["den"] = x.approx().get_den().get_str();
    return j;
  }
  return Json{{"p", x.p()},
              {"prec", x.prec()},
              {"valuation", x.valuation()},
              {"shift", x.shift()},
              {"rep", x.rep().get_str()}};
}

Json to_json(const TruncPowerSeries& f, long p) { return series_json(f.coeffs(), p); }

Json to_json(const MahlerCoeffs& m, long p) { return series_json(m.coeffs(), p); }

Json to_json_reduced(const std::vector<ExactRat>& coeffs, long p, long prec) {
  Json arr = Json::array();
  for (const auto& c : coeffs) {
    PadicNumber x(p, c, prec);
    Json r{{"rep", x.rep().get_str()}};
    if (x.shift() != 0) r["shift"] = x.shift();
    arr.push_back(std::move(r));
  }
  return Json{{"p", p}, {"prec", prec}, {"order", coeffs.size()}, {"coeffs", std::move(arr)}};
}

ExactRat rat_from_json(const Json& j) {
  if (j.is_object()) {
    ExactRat q(big_from(j.at("num")), big_from(j.at("den")));
    if (q.get_den() == 0) throw UsageError("zero denominator");
    q.canonicalize();
    return q;
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  return ExactRat(big_from(j));
}

PadicApprox approx_from_json(const Json& j) {
  return PadicApprox(j.at("p").get<long>(), j.at("prec").get<long>(), big_from(j.at("rep")));
}

}  // namespace padic
