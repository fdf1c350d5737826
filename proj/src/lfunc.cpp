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

#include "padicl/lfunc.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "padicl/dwork.hpp"
#include "padicl/gamma.hpp"
#include "padicl/series.hpp"

namespace padic {

// ---------------------------------------------------------------------------
// Characters
// ---------------------------------------------------------------------------

DirichletChar::DirichletChar(long modulus, std::vector<ExactRat> values, long prec, std::string label)
    : d_(modulus), values_(std::move(values)), prec_(prec), label_(std::move(label)) {
  if (d_ < 1) throw UsageError("character modulus must be >= 1");
  if (values_.size() != static_cast<std::size_t>(d_))
    throw UsageError("character table must list chi(0.." + std::to_string(d_ - 1) + ")");
}

DirichletChar DirichletChar::trivial() { return DirichletChar(1, {ExactRat(1)}, kExactPrec, "trivial"); }

bool is_fundamental_discriminant(long D) {
  auto squarefree = [](long n) {
    n = std::labs(n);
    for (long q = 2; q * q <= n; ++q)
      if (n % (q * q) == 0) return false;
    return true;
  };
  if (D == 0 || D == 1) return false;
  long r = ((D % 4) + 4) % 4;
  if (r == 1) return squarefree(D);
  if (r != 0) return false;
  long m = D / 4;
  long rm = ((m % 4) + 4) % 4;
  return (rm == 2 || rm == 3) && squarefree(m);
}

DirichletChar DirichletChar::kronecker(long D) {
  if (!is_fundamental_discriminant(D))
    throw UsageError("kronecker:" + std::to_string(D) + " is not a fundamental discriminant");
  long d = std::labs(D);
  std::vector<ExactRat> v;
  for (long a = 0; a < d; ++a) v.emplace_back(padic::kronecker(BigInt(D), BigInt(a)));
  return DirichletChar(d, std::move(v), kExactPrec, "kronecker:" + std::to_string(D));
}

const ExactRat& DirichletChar::operator()(const BigInt& a) const {
  BigInt r = a % d_;
  if (r < 0) r += d_;
  return values_[r.get_ui()];
}

void DirichletChar::validate(long p) const {
  require_odd_prime(p);
  if (d_ % p == 0) throw UsageError("character modulus " + std::to_string(d_) + " is divisible by p");
  const long check = std::min<long>(prec_, 8);
  for (long a = 0; a < d_; ++a) {
    const ExactRat& v = values_[static_cast<std::size_t>(a)];
    bool coprime = std::gcd(a, d_) == 1;
    if (!coprime && v != 0) throw UsageError("chi(" + std::to_string(a) + ") must vanish, gcd with modulus > 1");
    if (coprime && valuation(v, p) != 0) throw UsageError("chi(" + std::to_string(a) + ") is not a p-adic unit");
  }
  for (long a = 0; a < d_; ++a)
    for (long b = a; b < d_; ++b) {
      PadicApprox lhs = reduce_rational(values_[static_cast<std::size_t>(a * b % d_)], p, check);
      PadicApprox rhs = reduce_rational(values_[static_cast<std::size_t>(a)] * values_[static_cast<std::size_t>(b)], p, check);
      if (lhs != rhs) throw UsageError("character table is not multiplicative");
    }
}

// ---------------------------------------------------------------------------
// Volkenborn sums
// ---------------------------------------------------------------------------

std::string to_string(VolkenbornKernel k) { return k == VolkenbornKernel::Blocked ? "blocked" : "direct"; }

namespace {

using u64 = unsigned long;
using u128 = unsigned __int128;

// num * den^(-1) mod m, in [0, m); den must be invertible.
BigInt reduce_mod(const ExactRat& c, const BigInt& mod) {
  BigInt num = c.get_num(), den = c.get_den(), inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  BigInt r = num * inv % mod;
  if (r < 0) r += mod;
  return r;
}

u64 inverse_u64(u64 a, u64 m) {
  BigInt r;
  BigInt aa(a), mm(m);
  mpz_invert(r.get_mpz_t(), aa.get_mpz_t(), mm.get_mpz_t());
  return r.get_ui();
}

// sum_{a < D, p does not divide a} chi(a) a^(-e) mod p^W, for e in [m, m + count).
std::vector<BigInt> block_power_sums(const DirichletChar& chi, long p, long D, long m, long count, const BigInt& mod) {
  std::vector<BigInt> A(static_cast<std::size_t>(count), BigInt(0));
  for (long a = 1; a < D; ++a) {
    if (a % p == 0) continue;
    const ExactRat& c = chi(a);
    if (c == 0) continue;
    BigInt cv = reduce_mod(c, mod);
    BigInt inv_a, aa(a);
    mpz_invert(inv_a.get_mpz_t(), aa.get_mpz_t(), mod.get_mpz_t());
    BigInt pw;
    mpz_powm_ui(pw.get_mpz_t(), inv_a.get_mpz_t(), static_cast<unsigned long>(m), mod.get_mpz_t());
    for (long e = 0; e < count; ++e) {
      A[static_cast<std::size_t>(e)] = (A[static_cast<std::size_t>(e)] + cv * pw) % mod;
      pw = pw * inv_a % mod;
    }
  }
  return A;
}

BigInt blocked_sum(const DirichletChar& chi, long m, long p, long L, long W) {
  const BigInt mod = ipow(p, W);
  const long D = chi.modulus() * p;
  const long terms = W;  // (D b)^i vanishes mod p^W for i >= W
  const BigInt X = ipow(p, L - 1);
  // P_i = sum_{b < X} b^i, from (i+1) P_i = X^(i+1) - sum_{j<i} binom(i+1, j) P_j
  std::vector<BigInt> P;
  BigInt Xpow = X;
  for (long i = 0; i < terms; ++i) {
    BigInt acc = Xpow;
    BigInt binom = 1;
    for (long j = 0; j < i; ++j) {
      acc -= binom * P[static_cast<std::size_t>(j)];
      binom = binom * (i + 1 - j) / (j + 1);
    }
    P.push_back(acc / (i + 1));
    Xpow *= X;
  }
  auto A = block_power_sums(chi, p, D, m, terms, mod);
  BigInt total = 0, Dpow = 1, binom = 1;  // binom(m + i - 1, i)
  for (long i = 0; i < terms; ++i) {
    if (i > 0) binom = binom * (m + i - 1) / i;
    BigInt term = binom * Dpow % mod * (P[static_cast<std::size_t>(i)] % mod) % mod * A[static_cast<std::size_t>(i)];
    total = i % 2 ? BigInt(total - term) : BigInt(total + term);
    total %= mod;
    Dpow *= D;
  }
  if (total < 0) total += mod;
  return total;
}

BigInt direct_sum_u64(const DirichletChar& chi, long m, long p, u64 end, u64 mod, unsigned threads) {
  const long d = chi.modulus();
  std::vector<u64> chi_mod(static_cast<std::size_t>(d));
  for (long a = 0; a < d; ++a) chi_mod[static_cast<std::size_t>(a)] = reduce_mod(chi.values()[static_cast<std::size_t>(a)], BigInt(mod)).get_ui();
  auto mulmod = [mod](u64 x, u64 y) { return static_cast<u64>(static_cast<u128>(x) * y % mod); };
  auto chunk = [&](u64 lo, u64 hi) {
    constexpr std::size_t kBatch = 4096;
    std::vector<u64> ns, prefix;
    ns.reserve(kBatch);
    prefix.reserve(kBatch);
    u64 acc = 0;
    auto flush = [&]() {
      if (ns.empty()) return;
      u64 inv = inverse_u64(prefix.back(), mod);
      for (std::size_t k = ns.size(); k-- > 0;) {
        u64 inv_n = k == 0 ? inv : mulmod(inv, prefix[k - 1]);
        inv = mulmod(inv, ns[k] % mod);
        u64 pw = 1;
        for (long e = 0; e < m; ++e) pw = mulmod(pw, inv_n);
        acc = static_cast<u64>((static_cast<u128>(acc) + mulmod(pw, chi_mod[ns[k] % static_cast<u64>(d)])) % mod);
      }
      ns.clear();
      prefix.clear();
    };
    for (u64 n = lo; n < hi; ++n) {
      if (n % static_cast<u64>(p) == 0 || chi_mod[n % static_cast<u64>(d)] == 0) continue;
      prefix.push_back(prefix.empty() ? n % mod : mulmod(prefix.back(), n % mod));
      ns.push_back(n);
      if (ns.size() == kBatch) flush();
    }
    flush();
    return acc;
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<u64>(threads, std::max<u64>(1, end / 65536)));
  std::vector<u64> partial(threads, 0);
  std::vector<std::thread> pool;
  u64 step = end / threads + 1;
  for (unsigned t = 0; t < threads; ++t) {
    u64 lo = std::min<u64>(end, t * step), hi = std::min<u64>(end, lo + step);
    if (t + 1 == threads) hi = end;
    if (t == 0) continue;
    pool.emplace_back([&, t, lo, hi] { partial[t] = chunk(lo, hi); });
  }
  partial[0] = chunk(0, std::min<u64>(end, step));
  for (auto& th : pool) th.join();
  u64 total = 0;
  for (u64 v : partial) total = static_cast<u64>((static_cast<u128>(total) + v) % mod);
  return BigInt(total);
}

BigInt direct_sum_mpz(const DirichletChar& chi, long m, long p, const BigInt& end, const BigInt& mod) {
  BigInt total = 0;
  for (BigInt n = 1; n < end; ++n) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) continue;
    const ExactRat& c = chi(n);
    if (c == 0) continue;
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), n.get_mpz_t(), mod.get_mpz_t());
    BigInt pw;
    mpz_powm_ui(pw.get_mpz_t(), inv.get_mpz_t(), static_cast<unsigned long>(m), mod.get_mpz_t());
    total = (total + reduce_mod(c, mod) * pw) % mod;
  }
  return total;
}

}  // namespace

BigInt volkenborn_level_sum(const DirichletChar& chi, long m, long p, long L, long W, VolkenbornKernel kernel,
                            unsigned threads) {
  require_odd_prime(p);
  if (m < 1 || L < 1 || W < 1) throw UsageError("volkenborn_level_sum needs m, L, W >= 1");
  if (kernel == VolkenbornKernel::Blocked) return blocked_sum(chi, m, p, L, W);
  BigInt end = BigInt(chi.modulus()) * ipow(p, L);
  BigInt mod = ipow(p, W);
  if (mod.fits_ulong_p() && mod.get_ui() < (1UL << 62) && end.fits_ulong_p())
    return direct_sum_u64(chi, m, p, end.get_ui(), mod.get_ui(), threads);
  return direct_sum_mpz(chi, m, p, end, mod);
}

VolkenbornResult volkenborn_twisted(const DirichletChar& chi, long m, long p, long N, const VolkenbornOptions& options) {
  chi.validate(p);
  if (m < 1) throw UsageError("Volkenborn power needs m >= 1");
  const long cap = options.max_level < 0 ? N + 5 : options.max_level;
  auto level = [&](long L) {
    const long W = N + L + 2;
    BigInt T = volkenborn_level_sum(chi, m, p, L, W, options.kernel, options.threads);
    ExactRat S = ExactRat(T) / ExactRat(BigInt(chi.modulus()) * ipow(p, L));
    return PadicNumber(p, S, std::min(W, chi.prec()) - L);
  };
  PadicNumber prev = level(1);
  for (long L = 2; L <= cap; ++L) {
    PadicNumber cur = level(L);
    if (cur.agreement(prev) >= N) return {cur.with_prec(N), L - 1, options.kernel};
    prev = cur;
  }
  throw NoStabilization("Volkenborn sums did not stabilize mod p^" + std::to_string(N) + " by level " +
                        std::to_string(cap));
}

VolkenbornResult volkenborn_unit_power(long m, long p, long N, const VolkenbornOptions& options) {
  return volkenborn_twisted(DirichletChar::trivial(), m, p, N, options);
}

// ---------------------------------------------------------------------------
// L-values
// ---------------------------------------------------------------------------

namespace {

void require_s(long s) {
  if (s < 2) throw UsageError("L-values are computed for integers s >= 2");
}

}  // namespace

PadicNumber lp_via_limit(long s, long p, long N, const VolkenbornOptions& options) {
  require_s(s);
  const long loss = valuation(BigInt(s - 1), p);
  auto V = volkenborn_unit_power(s - 1, p, N + loss, options);
  return V.value.divided_by(ExactRat(s - 1));
}

PadicNumber lp_via_gamma(long s, long p, long N) {
  require_s(s);
  const long loss = factorial_valuation(s - 1, p);
  PadicNumber l = loggamma_deriv_at0(static_cast<std::size_t>(s), p, N + loss);
  ExactRat c = ExactRat(BigInt(1), factorial(s - 1));
  if (s % 2) c = -c;
  return l.times(c);
}

PadicNumber lp_character(long s, const DirichletChar& chi, long p, long N) {
  require_s(s);
  chi.validate(p);
  const long d = chi.modulus();
  const long loss = factorial_valuation(s - 1, p);
  PadicNumber acc = PadicNumber::zero(p, N + loss);
  for (long a = 0; a < d; ++a) {
    const ExactRat& c = chi.values()[static_cast<std::size_t>(a)];
    if (c == 0) continue;
    PadicNumber l = a == 0 ? loggamma_deriv_at0(static_cast<std::size_t>(s), p, N + loss)
                           : loggamma_deriv_at(ExactRat(a, d), static_cast<std::size_t>(s), p, N + loss);
    acc = acc + PadicNumber(p, c, chi.prec()) * l;
  }
  // (-d)^(-s) / (s-1)!
  BigInt mds = 1;
  for (long i = 0; i < s; ++i) mds *= -d;
  ExactRat scale(BigInt(1), mds * factorial(s - 1));
  scale.canonicalize();
  return acc.times(scale);
}

PadicNumber lp_character_via_limit(long s, const DirichletChar& chi, long p, long N, const VolkenbornOptions& options) {
  require_s(s);
  const long loss = valuation(BigInt(s - 1), p);
  auto V = volkenborn_twisted(chi, s - 1, p, N + loss, options);
  return V.value.divided_by(ExactRat(s - 1));
}

PadicNumber zeta_p(long s, long p, long N, LpRoute route) {
  PadicNumber L = route == LpRoute::Limit ? lp_via_limit(s, p, N) : lp_via_gamma(s, p, N);
  BigInt ps = ipow(p, s);
  return L.times(ExactRat(ps, ps - 1));
}

// ---------------------------------------------------------------------------
// Delta_s and the Frobenius entry
// ---------------------------------------------------------------------------

DeltaReport delta(long s, long p, long N) {
  require_s(s);
  require_odd_prime(p);
  const ExactRat sf(factorial(s));
  long W = N;
  for (int attempt = 0; attempt < 12; ++attempt) {
    auto B = compute_B(p, truncation_index(p, W, TaylorAt0{static_cast<std::size_t>(s)}));
    auto f = B.series();
    PadicNumber ds = dcoef(static_cast<std::size_t>(s), f, p, W);
    PadicNumber d1 = dcoef(1, f, p, W);
    PadicNumber pw = PadicNumber::exact(p, 1);
    for (long i = 0; i < s; ++i) pw = pw * d1;
    PadicNumber value = ds - pw.divided_by(sf);
    if (value.prec() >= N) return {s, ds, d1, value.with_prec(N), N};
    W += N - value.prec();
  }
  throw InsufficientPrecision("delta: working precision did not reach p^" + std::to_string(N));
}

FrobeniusEntry frobenius_entry(long p, long N) {
  require_odd_prime(p);
  if (p == 5) throw Unsupported("frobenius_entry: the constants 24/25 and 8/25 are not 5-adic integers; p = 5 is excluded");
  DeltaReport d3 = delta(3, p, N);
  PadicNumber L = lp_via_limit(3, p, N);
  PadicNumber Z = zeta_p(3, p, N);
  BigInt p3 = ipow(p, 3);
  FrobeniusEntry e{p, d3.delta.times(ExactRat(p3 * 24, 25)), L.times(ExactRat(p3 * 8, 25)),
                   Z.times(ExactRat((p3 - 1) * 8, 25)), d3.delta.valuation(), false, 0};
  e.guaranteed_prec = std::min({e.via_delta.prec(), e.via_lp.prec(), e.via_zeta.prec()});
  e.agree = e.via_delta.agreement(e.via_zeta) >= e.guaranteed_prec &&
            e.via_delta.agreement(e.via_lp) >= e.guaranteed_prec;
  return e;
}

}  // namespace padic
