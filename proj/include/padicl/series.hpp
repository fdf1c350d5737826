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

// Truncated power series, the falling-factorial (Mahler) basis, and the maps
// between them:
//
//   [g]        g = sum a_i x^i  ->  sum a_i (-1)^i (x)_i
//   inverse    g = e^x sum [g](n) (-1)^n x^n / n!
//   dcoef      [D^s g]_0 = sum_k a_k (-1)^(s+k) s(k, s)
//
// Coefficients are exact rationals. Infinite series carry a SeriesTail that
// says what is known about the coefficients past the stored table; every
// p-adic evaluation is truncated only where that knowledge certifies the
// dropped terms vanish modulo p^N.

#ifndef PADICL_SERIES_HPP
#define PADICL_SERIES_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "padicl/core.hpp"
#include "padicl/tail.hpp"

namespace padic {

struct SeriesTail {
  enum class Kind {
    Zero,     ///< finite: every coefficient past the table is 0
    Floor,    ///< infinite, with a CoefficientFloor valid for all indices
    Unknown,  ///< infinite, nothing known; only stabilization can certify
  };
  Kind kind = Kind::Zero;
  CoefficientFloor floor{};

  static SeriesTail zero() { return {}; }
  static SeriesTail bounded(CoefficientFloor f) { return {Kind::Floor, std::move(f)}; }
  static SeriesTail unknown() { return {Kind::Unknown, {}}; }
};

class TruncPowerSeries {
 public:
  TruncPowerSeries() = default;
  explicit TruncPowerSeries(std::vector<ExactRat> coeffs, SeriesTail tail = SeriesTail::zero());

  static TruncPowerSeries monomial(std::size_t n, const ExactRat& c = 1);

  std::size_t order() const noexcept { return coeffs_.size(); }
  const std::vector<ExactRat>& coeffs() const noexcept { return coeffs_; }
  const SeriesTail& tail() const noexcept { return tail_; }
  bool is_polynomial() const noexcept { return tail_.kind == SeriesTail::Kind::Zero; }

  /// a_k; zero past the table for polynomials, UsageError for infinite series.
  ExactRat coeff(std::size_t k) const;

  TruncPowerSeries times_x_power(std::size_t n) const;
  /// Product with a polynomial; the tail floor absorbs the polynomial's valuations.
  TruncPowerSeries times(const TruncPowerSeries& polynomial) const;
  TruncPowerSeries derivative() const;
  ExactRat evaluate(const ExactRat& x) const;

  friend bool operator==(const TruncPowerSeries& a, const TruncPowerSeries& b);

 private:
  std::vector<ExactRat> coeffs_;
  SeriesTail tail_;
};

/// phi = sum c_k (x)_k.
class MahlerCoeffs {
 public:
  MahlerCoeffs() = default;
  explicit MahlerCoeffs(std::vector<ExactRat> coeffs, SeriesTail tail = SeriesTail::zero());

  std::size_t size() const noexcept { return coeffs_.size(); }
  const std::vector<ExactRat>& coeffs() const noexcept { return coeffs_; }
  const SeriesTail& tail() const noexcept { return tail_; }
  bool is_finite() const noexcept { return tail_.kind == SeriesTail::Kind::Zero; }

 private:
  std::vector<ExactRat> coeffs_;
  SeriesTail tail_;
};

/// Signed Stirling numbers of the first kind, (x)_k = sum_j s(k, j) x^j,
/// for 0 <= k <= k_max and 0 <= j <= j_max. Immutable once built.
class StirlingTable {
 public:
  StirlingTable(std::size_t k_max, std::size_t j_max);

  std::size_t k_max() const noexcept { return k_max_; }
  std::size_t j_max() const noexcept { return j_max_; }
  const BigInt& operator()(std::size_t k, std::size_t j) const;

 private:
  std::size_t k_max_;
  std::size_t j_max_;
  std::vector<BigInt> cells_;
};

/// s(k, j). Builds a one-off table; use StirlingTable for repeated access.
BigInt stirling1(std::size_t k, std::size_t j);

MahlerCoeffs mahler_transform(const TruncPowerSeries& g);

/// Exact value of a finite Mahler series at a rational point.
ExactRat mahler_eval_exact(const MahlerCoeffs& m, const ExactRat& x);

struct MahlerValue {
  PadicNumber value;
  std::size_t terms = 0;    ///< number of leading terms summed
  bool stabilized = false;  ///< truncation came from the stabilization rule
};

/// sum c_k (r)_k at the canonical representative r of x, modulo p^N.
MahlerValue mahler_eval(const MahlerCoeffs& m, const PadicApprox& x, long N);

std::vector<ExactRat> forward_difference(std::span<const ExactRat> values);
/// Coefficients of the forward difference: sum c_k (x)_k -> sum k c_k (x)_{k-1}.
MahlerCoeffs forward_difference(const MahlerCoeffs& m);

/// Power series with [g](n) = values[n]; needs values for n = 0..K-1.
TruncPowerSeries inverse_transform(std::span<const ExactRat> values, std::size_t K);

ExactRat dcoef_exact(std::size_t s, const TruncPowerSeries& polynomial);
/// [D^s g]_0 modulo p^N.
PadicNumber dcoef(std::size_t s, const TruncPowerSeries& g, long p, long N);

/// Taylor coefficients at 0 of sum c_k (x)_k: t_j = sum_k c_k s(k, j).
std::vector<ExactRat> taylor_from_mahler_exact(const MahlerCoeffs& m, std::size_t s_max);
std::vector<PadicNumber> taylor_from_mahler(const MahlerCoeffs& m, std::size_t s_max, long p, long N);

/// Number of leading terms needed so that the dropped part of
/// sum_k c_k s(k, j) has valuation >= N.
std::size_t taylor_cutoff(const SeriesTail& tail, std::size_t j, long p, long N);

/// Number of leading terms needed so that the dropped part of
/// sum_k c_k (x)_k has valuation >= N for every x in Z_p.
std::size_t mahler_cutoff(const SeriesTail& tail, long p, long N);

}  // namespace padic

#endif  // PADICL_SERIES_HPP
