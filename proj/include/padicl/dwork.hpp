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

// The Dwork exponential f = exp(x + x^p/p) = sum B_k x^k and sums over its
// coefficients.

#ifndef PADICL_DWORK_HPP
#define PADICL_DWORK_HPP

#include <cstddef>
#include <variant>
#include <vector>

#include "padicl/core.hpp"
#include "padicl/series.hpp"

namespace padic {

/// rho = (2p - 1) / (p^2 (p - 1)); v_p(B_k) >= -floor(k rho) for all k.
ExactRat dwork_rate(long p);

class DworkCoeffs {
 public:
  DworkCoeffs(long p, std::vector<ExactRat> B);

  long p() const noexcept { return p_; }
  std::size_t size() const noexcept { return B_.size(); }
  const std::vector<ExactRat>& B() const noexcept { return B_; }
  /// B_k, with B_k = 0 for k < 0. Throws UsageError past the table.
  const ExactRat& at(long k) const;

  CoefficientFloor floor() const;
  /// f as an infinite series carrying its coefficient floor.
  TruncPowerSeries series() const;
  /// [f] = sum B_k (-1)^k (x)_k.
  MahlerCoeffs mahler() const;

 private:
  long p_;
  std::vector<ExactRat> B_;
};

/// B_0 .. B_{K-1} from k B_k = B_{k-1} + B_{k-p}.
DworkCoeffs compute_B(long p, std::size_t K);

/// The guaranteed bound -floor(k rho), for comparison with v_p(B_k).
long dwork_valuation_floor(long p, long k);

struct FactorialSum {
  long n = 1;
};
struct MahlerEval {};
struct TaylorAt0 {
  std::size_t s_max = 1;
};
using TruncationContext = std::variant<FactorialSum, MahlerEval, TaylorAt0>;

/// Number of leading B_k needed so that every dropped term has valuation >= N.
std::size_t truncation_index(long p, long N, const TruncationContext& context);

/// truncation_index + p, the most any single context below needs.
std::size_t default_table_length(long p, long N, std::size_t s_max = 3);

/// sum_{k>=0} B_k (n + k - 1)! mod p^N, n >= 1.
PadicApprox sum_factorial(long n, long p, long N);
PadicApprox sum_factorial(long n, const DworkCoeffs& B, long N);

/// Closed form of the factorial sum: 0 if p does not divide n, else
/// (-1)^a p^(a-1) (a-1)! for n = ap.
BigInt sum_factorial_closed_form(long n, long p);

/// sum_{k>=1} B_k (k - 1)! mod p^N.
PadicNumber sum_factorial_zero_case(long p, long N);
PadicNumber sum_factorial_zero_case(const DworkCoeffs& B, long N);

/// sum_k B_{k-s} (-1)^k (x)_k mod p^N.
PadicApprox shifted_mahler_sum(long s, const PadicApprox& x, const DworkCoeffs& B, long N);
PadicApprox shifted_mahler_sum(long s, const PadicApprox& x, long N);

/// Gamma_p(a + x) = (-1)^a (x+1)^(a-1) [f](x) for 0 < a < p, v_p(x) >= 1.
PadicApprox gamma_via_unit_shift(long a, const PadicApprox& x, const DworkCoeffs& B, long N);
PadicApprox gamma_via_unit_shift(long a, const PadicApprox& x, long N);

/// [D^s x^n f]_0 summed over the table.
PadicNumber dcoef_xn_f(std::size_t s, std::size_t n, const DworkCoeffs& B, long N);

/// x (x - p) ... (x - (a-1)p) as a polynomial.
TruncPowerSeries scaled_falling_poly(long a, long p);

/// The Robert series ((1 - x^p)/(x - 1)) f = -(1 + x + ... + x^(p-1)) f.
TruncPowerSeries robert_series(const DworkCoeffs& B);

/// Mean of v_p(B_k) - v_p(B_{k-1}) over the table (skipping zeros); a diagnostic.
double measured_valuation_slope(const DworkCoeffs& B);

}  // namespace padic

#endif  // PADICL_DWORK_HPP
