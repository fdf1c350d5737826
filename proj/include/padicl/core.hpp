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

#ifndef PADICL_CORE_HPP
#define PADICL_CORE_HPP

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace padic {

using BigInt = mpz_class;
using ExactRat = mpq_class;

/// Marker precision for values that are known exactly.
inline constexpr long kExactPrec = std::numeric_limits<long>::max() / 4;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Bad arguments: mismatched primes, violated preconditions, malformed input.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Attempted to invert an element of pZ_p.
class NonUnitDivision : public std::domain_error {
 public:
  explicit NonUnitDivision(long valuation);
  long valuation() const noexcept { return valuation_; }

 private:
  long valuation_;
};

/// A rational whose denominator is divisible by p cannot be reduced into Z/p^N.
class DenominatorNotUnit : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// No a-priori bound or stabilization certified the truncated tail.
class TailNotCertified : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientPrecision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A limit failed to stabilize before its level cap.
class NoStabilization : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Unsupported : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Integer helpers
// ---------------------------------------------------------------------------

bool is_prime(long n);

/// Throws UsageError unless p is an odd prime.
void require_odd_prime(long p);

BigInt ipow(long base, long exp);

/// v_p(n) for n != 0.
long valuation(const BigInt& n, long p);

/// v_p(q) for q != 0; kExactPrec for q == 0.
long valuation(const ExactRat& q, long p);

/// Legendre: v_p(m!) = (m - s_p(m)) / (p - 1).
long factorial_valuation(long m, long p);

long digit_sum(long m, long p);

/// floor(log_p k) for k >= 1.
long floor_log(long k, long p);

BigInt factorial(long n);

/// Parses "a" or "a/b" (optional sign, decimal).
ExactRat parse_rational(std::string_view text);

std::string to_string(const ExactRat& q);

// ---------------------------------------------------------------------------
// PadicApprox: Z/p^N standing for a p-adic integer known to absolute
// precision N.
// ---------------------------------------------------------------------------

class PadicApprox {
 public:
  /// Reduces `rep` into [0, p^prec).
  PadicApprox(long p, long prec, const BigInt& rep);

  static PadicApprox zero(long p, long prec) { return {p, prec, BigInt(0)}; }
  static PadicApprox one(long p, long prec) { return {p, prec, BigInt(1)}; }

  long p() const noexcept { return p_; }
  long prec() const noexcept { return prec_; }
  const BigInt& rep() const noexcept { return rep_; }
  BigInt modulus() const { return ipow(p_, prec_); }

  bool is_zero() const { return rep_ == 0; }
  bool is_unit() const { return mpz_divisible_ui_p(rep_.get_mpz_t(), static_cast<unsigned long>(p_)) == 0; }

  /// v_p(rep), capped at prec when rep == 0.
  long valuation() const;

  /// Drops precision to n <= prec.
  PadicApprox with_prec(long n) const;

  PadicApprox inverse() const;

  /// Base-p digits, least significant first, exactly prec of them.
  std::vector<long> digits() const;

  friend PadicApprox operator+(const PadicApprox& a, const PadicApprox& b);
  friend PadicApprox operator-(const PadicApprox& a, const PadicApprox& b);
  friend PadicApprox operator*(const PadicApprox& a, const PadicApprox& b);
  PadicApprox operator-() const;

  friend bool operator==(const PadicApprox& a, const PadicApprox& b) {
    return a.p_ == b.p_ && a.prec_ == b.prec_ && a.rep_ == b.rep_;
  }

 private:
  long p_;
  long prec_;
  BigInt rep_;
};

PadicApprox add(const PadicApprox& a, const PadicApprox& b);
PadicApprox mul(const PadicApprox& a, const PadicApprox& b);
PadicApprox neg(const PadicApprox& a);
PadicApprox invert(const PadicApprox& a);
long valuation(const PadicApprox& a);

/// num * den^{-1} mod p^N; DenominatorNotUnit when p | den.
PadicApprox reduce_rational(const ExactRat& r, long p, long N);

/// The (p-1)-th root of unity congruent to a mod p, found by iterating x <- x^p.
PadicApprox teichmuller(const BigInt& a, long p, long N);

/// Kronecker symbol (a / n), the usual extension of the Jacobi symbol.
int kronecker(const BigInt& a, const BigInt& n);

// ---------------------------------------------------------------------------
// PadicNumber: an element of Q_p known modulo p^prec Z_p, carried by an exact
// rational approximant. Negative valuations are allowed. The approximant is
// canonical: 0 when v >= prec, otherwise rep / p^shift with
// shift = max(0, -v) and 0 <= rep < p^(prec + shift).
// ---------------------------------------------------------------------------

class PadicNumber {
 public:
  PadicNumber(long p, const ExactRat& approx, long prec);

  static PadicNumber exact(long p, const ExactRat& value) { return {p, value, kExactPrec}; }
  static PadicNumber from_approx(const PadicApprox& a) { return {a.p(), ExactRat(a.rep()), a.prec()}; }
  static PadicNumber zero(long p, long prec) { return {p, ExactRat(0), prec}; }

  long p() const noexcept { return p_; }
  long prec() const noexcept { return prec_; }
  bool is_exact() const noexcept { return prec_ >= kExactPrec; }
  const ExactRat& approx() const noexcept { return approx_; }

  /// min(v_p(approx), prec).
  long valuation() const;
  bool is_zero_at_prec() const { return valuation() >= prec_; }

  /// Exponent s such that value = rep / p^s.
  long shift() const;
  BigInt rep() const;

  PadicNumber with_prec(long n) const;

  /// Throws DenominatorNotUnit if the value is not known to lie in Z_p.
  PadicApprox to_approx() const;

  /// Largest n with this == other mod p^n, limited by both precisions.
  long agreement(const PadicNumber& other) const;

  PadicNumber times(const ExactRat& c) const;
  PadicNumber divided_by(const ExactRat& c) const;
  PadicNumber divided_by(const PadicNumber& c) const;
  PadicNumber times_p_power(long e) const;

  friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
  PadicNumber operator-() const { return {p_, -approx_, prec_}; }

  friend bool operator==(const PadicNumber& a, const PadicNumber& b) {
    return a.p_ == b.p_ && a.prec_ == b.prec_ && a.approx_ == b.approx_;
  }

 private:
  long p_;
  long prec_;
  ExactRat approx_;
};

// ---------------------------------------------------------------------------
// Falling and rising factorials over any ring type with integer conversion.
// ---------------------------------------------------------------------------

/// (x)_n = x (x-1) ... (x-n+1).
template <class T>
T falling_factorial(const T& x, long n) {
  T acc(1);
  for (long i = 0; i < n; ++i) acc = acc * (x - T(i));
  return acc;
}

/// (x)^n = x (x+1) ... (x+n-1).
template <class T>
T rising_factorial(const T& x, long n) {
  T acc(1);
  for (long i = 0; i < n; ++i) acc = acc * (x + T(i));
  return acc;
}

template <>
PadicApprox falling_factorial(const PadicApprox& x, long n);
template <>
PadicApprox rising_factorial(const PadicApprox& x, long n);

}  // namespace padic

#endif  // PADICL_CORE_HPP
