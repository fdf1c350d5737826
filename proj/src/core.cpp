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

#include "padicl/core.hpp"

#include <algorithm>
#include <cctype>

namespace padic {

NonUnitDivision::NonUnitDivision(long valuation)
    : std::domain_error("division by a non-unit (valuation " + std::to_string(valuation) + ")"),
      valuation_(valuation) {}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void require_odd_prime(long p) {
  if (p < 3 || !is_prime(p)) throw UsageError("p must be an odd prime, got " + std::to_string(p));
}

BigInt ipow(long base, long exp) {
  if (exp < 0) throw UsageError("ipow: negative exponent");
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
  return r;
}

long valuation(const BigInt& n, long p) {
  if (n == 0) return kExactPrec;
  BigInt q;
  return static_cast<long>(mpz_remove(q.get_mpz_t(), n.get_mpz_t(), BigInt(p).get_mpz_t()));
}

long valuation(const ExactRat& q, long p) {
  if (q == 0) return kExactPrec;
  return valuation(BigInt(q.get_num()), p) - valuation(BigInt(q.get_den()), p);
}

long digit_sum(long m, long p) {
  long s = 0;
  for (; m > 0; m /= p) s += m % p;
  return s;
}

long factorial_valuation(long m, long p) {
  if (m < 0) throw UsageError("factorial_valuation: negative argument");
  return (m - digit_sum(m, p)) / (p - 1);
}

long floor_log(long k, long p) {
  if (k < 1) throw UsageError("floor_log: argument must be >= 1");
  long e = 0;
  for (long q = p; q <= k; q *= p) {
    ++e;
    if (q > std::numeric_limits<long>::max() / p) break;
  }
  return e;
}

BigInt factorial(long n) {
  if (n < 0) throw UsageError("factorial: negative argument");
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

ExactRat parse_rational(std::string_view text) {
  auto trimmed = std::string(text);
  trimmed.erase(std::remove_if(trimmed.begin(), trimmed.end(), [](unsigned char c) { return std::isspace(c); }),
                trimmed.end());
  auto slash = trimmed.find('/');
  auto parse_int = [&](const std::string& s) {
    if (s.empty()) throw UsageError("malformed number: '" + std::string(text) + "'");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw UsageError("malformed number: '" + std::string(text) + "'");
    for (std::size_t i = start; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw UsageError("malformed number: '" + std::string(text) + "'");
    return BigInt(s[0] == '+' ? s.substr(1) : s);
  };
  if (slash == std::string::npos) return ExactRat(parse_int(trimmed));
  BigInt num = parse_int(trimmed.substr(0, slash));
  BigInt den = parse_int(trimmed.substr(slash + 1));
  if (den == 0) throw UsageError("zero denominator: '" + std::string(text) + "'");
  ExactRat q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const ExactRat& q) { return q.get_str(); }

// ---------------------------------------------------------------------------
// PadicApprox
// ---------------------------------------------------------------------------

namespace {

void check_same_prime(const PadicApprox& a, const PadicApprox& b) {
  if (a.p() != b.p())
    throw UsageError("mismatched primes: " + std::to_string(a.p()) + " vs " + std::to_string(b.p()));
}

BigInt mod_positive(const BigInt& x, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

PadicApprox::PadicApprox(long p, long prec, const BigInt& rep) : p_(p), prec_(prec) {
  require_odd_prime(p);
  if (prec < 1) throw UsageError("precision must be >= 1, got " + std::to_string(prec));
  rep_ = mod_positive(rep, ipow(p, prec));
}

long PadicApprox::valuation() const { return rep_ == 0 ? prec_ : padic::valuation(rep_, p_); }

PadicApprox PadicApprox::with_prec(long n) const {
  if (n > prec_) throw InsufficientPrecision("cannot raise precision from " + std::to_string(prec_) + " to " + std::to_string(n));
  return {p_, n, rep_};
}

PadicApprox PadicApprox::inverse() const {
  if (!is_unit()) throw NonUnitDivision(valuation());
  BigInt inv;
  BigInt m = modulus();
  mpz_invert(inv.get_mpz_t(), rep_.get_mpz_t(), m.get_mpz_t());
  return {p_, prec_, inv};
}

std::vector<long> PadicApprox::digits() const {
  std::vector<long> out;
  out.reserve(static_cast<std::size_t>(prec_));
  BigInt r = rep_;
  for (long i = 0; i < prec_; ++i) {
    BigInt d;
    mpz_fdiv_qr_ui(r.get_mpz_t(), d.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(p_));
    out.push_back(d.get_si());
  }
  return out;
}

PadicApprox operator+(const PadicApprox& a, const PadicApprox& b) {
  check_same_prime(a, b);
  return {a.p_, std::min(a.prec_, b.prec_), a.rep_ + b.rep_};
}

PadicApprox operator-(const PadicApprox& a, const PadicApprox& b) {
  check_same_prime(a, b);
  return {a.p_, std::min(a.prec_, b.prec_), a.rep_ - b.rep_};
}

PadicApprox operator*(const PadicApprox& a, const PadicApprox& b) {
  check_same_prime(a, b);
  return {a.p_, std::min(a.prec_, b.prec_), a.rep_ * b.rep_};
}

PadicApprox PadicApprox::operator-() const { return {p_, prec_, -rep_}; }

PadicApprox add(const PadicApprox& a, const PadicApprox& b) { return a + b; }
PadicApprox mul(const PadicApprox& a, const PadicApprox& b) { return a * b; }
PadicApprox neg(const PadicApprox& a) { return -a; }
PadicApprox invert(const PadicApprox& a) { return a.inverse(); }
long valuation(const PadicApprox& a) { return a.valuation(); }

PadicApprox reduce_rational(const ExactRat& r, long p, long N) {
  require_odd_prime(p);
  BigInt den = r.get_den();
  if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p)))
    throw DenominatorNotUnit("denominator of " + r.get_str() + " is divisible by " + std::to_string(p));
  BigInt m = ipow(p, N);
  BigInt inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  return {p, N, BigInt(r.get_num()) * inv};
}

PadicApprox teichmuller(const BigInt& a, long p, long N) {
  require_odd_prime(p);
  if (mpz_divisible_ui_p(a.get_mpz_t(), static_cast<unsigned long>(p)))
    throw UsageError("teichmuller: argument divisible by p");
  BigInt m = ipow(p, N);
  BigInt x = mod_positive(a, m);
  // x <- x^p gains one digit of agreement with the limit per step.
  for (long i = 0; i <= N; ++i) {
    BigInt next;
    mpz_powm_ui(next.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p), m.get_mpz_t());
    if (next == x) break;
    x = next;
  }
  return {p, N, x};
}

int kronecker(const BigInt& a, const BigInt& n) { return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t()); }

template <>
PadicApprox falling_factorial(const PadicApprox& x, long n) {
  PadicApprox acc = PadicApprox::one(x.p(), x.prec());
  for (long i = 0; i < n; ++i) acc = acc * PadicApprox(x.p(), x.prec(), x.rep() - i);
  return acc;
}

template <>
PadicApprox rising_factorial(const PadicApprox& x, long n) {
  PadicApprox acc = PadicApprox::one(x.p(), x.prec());
  for (long i = 0; i < n; ++i) acc = acc * PadicApprox(x.p(), x.prec(), x.rep() + i);
  return acc;
}

// ---------------------------------------------------------------------------
// PadicNumber
// ---------------------------------------------------------------------------

PadicNumber::PadicNumber(long p, const ExactRat& approx, long prec) : p_(p), prec_(std::min(prec, kExactPrec)) {
  require_odd_prime(p);
  if (prec_ >= kExactPrec) {
    approx_ = approx;
    approx_.canonicalize();
    return;
  }
  long v = padic::valuation(approx, p);
  if (v >= prec_) {
    approx_ = 0;
    return;
  }
  long s = std::max(0L, -v);
  // Canonical representative of the class approx + p^prec Z_p.
  ExactRat scaled = approx * ExactRat(ipow(p, s));
  PadicApprox r = reduce_rational(scaled, p, prec_ + s);
  approx_ = ExactRat(r.rep(), ipow(p, s));
  approx_.canonicalize();
}

long PadicNumber::valuation() const { return std::min(padic::valuation(approx_, p_), prec_); }

long PadicNumber::shift() const {
  long v = padic::valuation(approx_, p_);
  return (approx_ == 0 || v >= 0) ? 0 : -v;
}

BigInt PadicNumber::rep() const {
  if (is_exact()) throw UsageError("rep() of an exact value");
  long s = shift();
  if (prec_ + s <= 0) return 0;
  ExactRat scaled = approx_ * ExactRat(ipow(p_, s));
  return reduce_rational(scaled, p_, prec_ + s).rep();
}

PadicNumber PadicNumber::with_prec(long n) const {
  if (n > prec_) throw InsufficientPrecision("cannot raise precision from " + std::to_string(prec_) + " to " + std::to_string(n));
  return {p_, approx_, n};
}

PadicApprox PadicNumber::to_approx() const {
  if (is_exact()) throw UsageError("to_approx() of an exact value needs an explicit precision");
  if (prec_ < 1) throw InsufficientPrecision("no p-adic digits known (precision " + std::to_string(prec_) + ")");
  if (shift() > 0) throw DenominatorNotUnit("value has valuation " + std::to_string(valuation()) + " < 0");
  return reduce_rational(approx_, p_, prec_);
}

long PadicNumber::agreement(const PadicNumber& other) const {
  if (p_ != other.p_) throw UsageError("mismatched primes");
  long v = padic::valuation(ExactRat(approx_ - other.approx_), p_);
  return std::min({prec_, other.prec_, v});
}

namespace {

long sat_add(long a, long b) {
  if (a >= kExactPrec || b >= kExactPrec) return kExactPrec;
  return a + b;
}

}  // namespace

PadicNumber PadicNumber::times(const ExactRat& c) const {
  if (c == 0) return exact(p_, 0);
  return {p_, approx_ * c, sat_add(prec_, padic::valuation(c, p_))};
}

PadicNumber PadicNumber::divided_by(const ExactRat& c) const {
  if (c == 0) throw UsageError("division by zero");
  return {p_, approx_ / c, sat_add(prec_, -padic::valuation(c, p_))};
}

PadicNumber PadicNumber::times_p_power(long e) const {
  ExactRat scale = e >= 0 ? ExactRat(ipow(p_, e)) : ExactRat(BigInt(1), ipow(p_, -e));
  return times(scale);
}

PadicNumber PadicNumber::divided_by(const PadicNumber& c) const {
  if (c.p_ != p_) throw UsageError("mismatched primes");
  if (c.is_exact()) return divided_by(c.approx_);
  long vc = padic::valuation(c.approx_, p_);
  if (vc >= c.prec_) throw InsufficientPrecision("divisor is indistinguishable from zero");
  long va = padic::valuation(approx_, p_);
  long prec = std::min(sat_add(prec_, vc), sat_add(va, c.prec_)) - 2 * vc;
  return {p_, approx_ / c.approx_, prec};
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
  if (a.p_ != b.p_) throw UsageError("mismatched primes");
  return {a.p_, a.approx_ + b.approx_, std::min(a.prec_, b.prec_)};
}

PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) {
  if (a.p_ != b.p_) throw UsageError("mismatched primes");
  return {a.p_, a.approx_ - b.approx_, std::min(a.prec_, b.prec_)};
}

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
  if (a.p_ != b.p_) throw UsageError("mismatched primes");
  long va = valuation(a.approx_, a.p_);
  long vb = valuation(b.approx_, b.p_);
  // ab - AB = A(b - B) + B(a - A) + (a - A)(b - B)
  long prec = std::min({sat_add(va, b.prec_), sat_add(vb, a.prec_), sat_add(a.prec_, b.prec_)});
  return {a.p_, a.approx_ * b.approx_, prec};
}

}  // namespace padic
