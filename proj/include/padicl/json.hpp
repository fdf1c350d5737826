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

// JSON records for the numeric types. Big integers are decimal strings.

#ifndef PADICL_JSON_HPP
#define PADICL_JSON_HPP

#include <json.hpp>

#include "padicl/core.hpp"
#include "padicl/series.hpp"

namespace padic {

using Json = nlohmann::ordered_json;

/// {num, den}
Json to_json(const ExactRat& q);
/// {p, prec, rep}
Json to_json(const PadicApprox& a);
/// {p, prec, valuation, shift, rep}: the value is rep / p^shift mod p^prec.
/// Exact values carry prec null and {num, den} instead.
Json to_json(const PadicNumber& x);

/// {p, prec, order, coeffs: [{num, den}]}; prec null for exact coefficients.
Json to_json(const TruncPowerSeries& f, long p);
Json to_json(const MahlerCoeffs& m, long p);
/// {p, prec, order, coeffs: [{rep}]}: coefficients reduced mod p^prec.
Json to_json_reduced(const std::vector<ExactRat>& coeffs, long p, long prec);

ExactRat rat_from_json(const Json& j);
PadicApprox approx_from_json(const Json& j);

}  // namespace padic

#endif  // PADICL_JSON_HPP
