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

#include "padicl/gamma.hpp"

#include <algorithm>
#include <thread>

namespace padic {

namespace {

// prod_{lo <= j < hi, p does not divide j} j mod m
BigInt unit_product(long lo, long hi, long p, const BigInt& m) {
  if (m.fits_ulong_p() && m.get_ui() < (1UL << 62)) {
    const unsigned __int128 mod = m.get_ui();
    unsigned __int128 acc = 1 % mod;
    for (long j = lo; j < hi; ++j)
      if (j % p) acc = acc * static_cast<unsigned long>(j) % mod;
    return BigInt(static_cast<unsigned long>(acc));
  }
  BigInt acc = 1;
  for (long j = lo; j < hi; ++j)
    if (j % p) {
      acc *= static_cast<unsigned long>(j);
      acc %= m;
    }
  return acc;
}

long residue_mod_p(const ExactRat& z, long p) { return reduce_rational(z, p, 1).rep().get_si(); }

// Gamma_p at a representative r in [0, p^N) that is within reach of a product.
std::optional<PadicApprox> morita_if_small(const BigInt& r, long p, long N, long limit) {
  BigInt m = ipow(p, N);
  if (r <= limit) return gamma_morita(r.get_si(), p, N);
  BigInt neg = m - r;
  if (neg <= limit) return gamma_morita(-neg.get_si(), p, N);
  return std::nullopt;
}

}  // namespace

PadicApprox gamma_morita(long n, long p, long N) {
  require_odd_prime(p);
  BigInt m = ipow(p, N);
  if (n >= 0) {
    BigInt prod = unit_product(1, n, p, m);
    return PadicApprox(p, N, n % 2 ? BigInt(-prod) : prod);
  }
  // Gamma_p(x) = -Gamma_p(x + 1) / x for units x, -Gamma_p(x + 1) otherwise.
  const long k = -n;
  PadicApprox prod(p, N, unit_product(1, k + 1, p, m));
  long units = k - k / p;
  PadicApprox inv = prod.inverse();
  // prod over x = -k..-1 of (-1/x) or (-1) equals (-1)^k (-1)^units / prod_j j
  return (k + units) % 2 ? -inv : inv;
}

GammaTable::GammaTable(long p, long N, std::size_t stride, unsigned threads)
    : p_(p), N_(N), stride_(std::max<std::size_t>(stride, 1)), modulus_(ipow(p, N)) {
  require_odd_prime(p);
  if (!modulus_.fits_slong_p()) throw UsageError("GammaTable: p^N too large to tabulate");
  const long period = modulus_.get_si();
  const long blocks = (period + static_cast<long>(stride_) - 1) / static_cast<long>(stride_);
  std::vector<BigInt> block_products(static_cast<std::size_t>(blocks));
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<long>(blocks, 1)));
  auto work = [&](unsigned t) {
    for (long b = t; b < blocks; b += threads) {
      long lo = std::max<long>(1, b * static_cast<long>(stride_));
      long hi = std::min<long>(period, (b + 1) * static_cast<long>(stride_));
      block_products[static_cast<std::size_t>(b)] = unit_product(lo, hi, p_, modulus_);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool) th.join();
  checkpoints_.reserve(static_cast<std::size_t>(blocks) + 1);
  checkpoints_.push_back(1);
  for (long b = 0; b < blocks; ++b) checkpoints_.push_back(checkpoints_.back() * block_products[static_cast<std::size_t>(b)] % modulus_);
}

PadicApprox GammaTable::operator()(const BigInt& n) const {
  BigInt r = n % modulus_;
  if (r < 0) r += modulus_;
  long rv = r.get_si();
  long c = rv / static_cast<long>(stride_);
  BigInt prod = checkpoints_[static_cast<std::size_t>(c)] *
                unit_product(std::max<long>(1, c * static_cast<long>(stride_)), rv, p_, modulus_);
  return PadicApprox(p_, N_, rv % 2 ? BigInt(-prod) : prod);
}

std::string to_string(GammaRoute route) {
  switch (route) {
    case GammaRoute::MoritaProduct:
      return "morita-product";
    case GammaRoute::MoritaTable:
      return "morita-table";
    case GammaRoute::LocalExpansion:
      return "local-expansion";
  }
  return "unknown";
}

GammaValue gamma_eval(const PadicApprox& z, long N) {
  const long p = z.p();
  if (z.prec() < N)
    throw InsufficientPrecision("gamma_eval: argument known to p^" + std::to_string(z.prec()) + ", need p^" +
                                std::to_string(N));
  PadicApprox zr = z.with_prec(N);
  if (auto v = morita_if_small(zr.rep(), p, N, kMoritaPeriodLimit)) return {*v, GammaRoute::MoritaProduct};
  // -a + p x0 = r
  long a = static_cast<long>(mpz_fdiv_ui(BigInt(-zr.rep()).get_mpz_t(), static_cast<unsigned long>(p)));
  ExactRat x0 = ExactRat(zr.rep() + a) / ExactRat(p);
  LocalExpansion probe(p, a, {});
  std::size_t K = probe.cutoff(N);
  auto B = compute_B(p, static_cast<std::size_t>(a) + K * static_cast<std::size_t>(p) + 1);
  return {local_expansion(a, B, K).evaluate(x0, N).to_approx(), GammaRoute::LocalExpansion};
}

// ---------------------------------------------------------------------------
// Local expansion
// ---------------------------------------------------------------------------

LocalExpansion::LocalExpansion(long p, long a, std::vector<ExactRat> coeffs) : p_(p), a_(a), d_(std::move(coeffs)) {
  require_odd_prime(p);
  if (a < 0 || a >= p) throw UsageError("local expansion residue must lie in [0, p)");
}

std::size_t LocalExpansion::cutoff(long N, std::size_t j) const {
  const long jj = static_cast<long>(j);
  const ExactRat rho = dwork_rate(p_);
  // v(p^k B_{a+kp}) >= k - floor((a+kp) rho); the t^j coefficient of (x0+t)^k
  // is e_{k-j}(x0, ..., x0+k-1), of valuation >= v(k!) - j floor(log_p k).
  auto exact_floor = [&](long k) -> long {
    if (k < jj) return kExactPrec;
    if (k == 0) return dwork_valuation_floor(p_, a_);
    return k + dwork_valuation_floor(p_, a_ + k * p_) + factorial_valuation(k, p_) - jj * floor_log(k, p_);
  };
  LinearLogModel model{ExactRat(1) - rho * ExactRat(p_) + ExactRat(1, p_ - 1), ExactRat(2), jj + 1};
  return certified_cutoff(p_, N, exact_floor, model);
}

std::vector<PadicNumber> LocalExpansion::taylor(const ExactRat& x0, std::size_t s_max, long N) const {
  std::size_t K = 0;
  for (std::size_t j = 0; j <= s_max; ++j) K = std::max(K, cutoff(N, j));
  if (K > d_.size())
    throw TailNotCertified("local expansion needs " + std::to_string(K) + " terms, has " + std::to_string(d_.size()));
  if (valuation(x0, p_) < 0) throw UsageError("local expansion point must lie in Z_p");
  std::vector<ExactRat> tau(s_max + 1, ExactRat(0));
  // R holds (x0 + t)^k truncated at degree s_max.
  std::vector<ExactRat> R(s_max + 1, ExactRat(0));
  R[0] = 1;
  for (std::size_t k = 0; k < K; ++k) {
    if (k > 0) {
      ExactRat c = x0 + ExactRat(static_cast<long>(k - 1));
      for (std::size_t j = s_max; j > 0; --j) R[j] = R[j] * c + R[j - 1];
      R[0] *= c;
    }
    for (std::size_t j = 0; j <= s_max; ++j) tau[j] += d_[k] * R[j];
  }
  std::vector<PadicNumber> out;
  for (const auto& t : tau) out.emplace_back(p_, t, N);
  return out;
}

PadicNumber LocalExpansion::evaluate(const ExactRat& x, long N) const { return taylor(x, 0, N)[0]; }

LocalExpansion local_expansion(long a, const DworkCoeffs& B, std::size_t K) {
  const long p = B.p();
  if (a < 0 || a >= p) throw UsageError("local expansion residue must lie in [0, p)");
  if (K > 0 && static_cast<std::size_t>(a) + (K - 1) * static_cast<std::size_t>(p) >= B.size())
    throw UsageError("local_expansion: " + std::to_string(K) + " terms need B up to index " +
                     std::to_string(static_cast<std::size_t>(a) + (K - 1) * static_cast<std::size_t>(p)) +
                     ", table has " + std::to_string(B.size()));
  std::vector<ExactRat> d;
  BigInt pk = 1;
  for (std::size_t k = 0; k < K; ++k) {
    d.push_back(ExactRat(pk) * B.B()[static_cast<std::size_t>(a) + k * static_cast<std::size_t>(p)]);
    pk *= p;
  }
  return LocalExpansion(p, a, std::move(d));
}

LocalExpansion local_expansion(long a, const DworkCoeffs& B) {
  std::size_t K = B.size() > static_cast<std::size_t>(a) ? (B.size() - 1 - static_cast<std::size_t>(a)) / static_cast<std::size_t>(B.p()) + 1 : 0;
  return local_expansion(a, B, K);
}

// ---------------------------------------------------------------------------
// Taylor coefficients and derivatives
// ---------------------------------------------------------------------------

std::vector<PadicNumber> gamma_taylor_at0(std::size_t s_max, long p, long N) {
  auto B = compute_B(p, truncation_index(p, N, TaylorAt0{s_max}));
  return taylor_from_mahler(B.mahler(), s_max, p, N);
}

std::vector<PadicNumber> gamma_taylor_at(const ExactRat& z, std::size_t s_max, long p, long N) {
  require_odd_prime(p);
  if (valuation(z, p) < 0) throw UsageError("gamma_taylor_at: point must lie in Z_p");
  // z = -a + p x0
  long a = (p - residue_mod_p(z, p)) % p;
  ExactRat x0 = (z + ExactRat(a)) / ExactRat(p);
  const long W = N + static_cast<long>(s_max);
  LocalExpansion probe(p, a, {});
  std::size_t K = 0;
  for (std::size_t j = 0; j <= s_max; ++j) K = std::max(K, probe.cutoff(W, j));
  auto B = compute_B(p, static_cast<std::size_t>(a) + K * static_cast<std::size_t>(p) + 1);
  auto tau = local_expansion(a, B, K).taylor(x0, s_max, W);
  // Gamma_p(z + u) = sum tau_j (u/p)^j
  std::vector<PadicNumber> c;
  for (std::size_t j = 0; j <= s_max; ++j) c.push_back(tau[j].times_p_power(-static_cast<long>(j)).with_prec(N));
  return c;
}

PadicNumber gamma_deriv_at0(std::size_t s, long p, long N) {
  const long vs = factorial_valuation(static_cast<long>(s), p);
  auto t = gamma_taylor_at0(s, p, std::max(1L, N - vs));
  return t[s].times(ExactRat(factorial(static_cast<long>(s)))).with_prec(N);
}

PadicNumber gamma_deriv_at(const ExactRat& z, std::size_t s, long p, long N) {
  const long vs = factorial_valuation(static_cast<long>(s), p);
  auto c = gamma_taylor_at(z, s, p, std::max(1L, N - vs));
  return c[s].times(ExactRat(factorial(static_cast<long>(s)))).with_prec(N);
}

std::vector<PadicNumber> formal_log(const std::vector<PadicNumber>& t) {
  if (t.empty()) return {};
  const long p = t[0].p();
  if (t[0].valuation() != 0) throw NonUnitDivision(t[0].valuation());
  std::vector<PadicNumber> u;
  for (const auto& c : t) u.push_back(c.divided_by(t[0]));
  std::vector<PadicNumber> l{PadicNumber::exact(p, 0)};
  for (std::size_t n = 1; n < t.size(); ++n) {
    PadicNumber acc = u[n].times(ExactRat(static_cast<long>(n)));
    for (std::size_t k = 1; k < n; ++k) acc = acc - (l[k] * u[n - k]).times(ExactRat(static_cast<long>(k)));
    l.push_back(acc.divided_by(ExactRat(static_cast<long>(n))));
  }
  return l;
}

namespace {

template <class TaylorFn>
PadicNumber loggamma_adaptive(std::size_t s, long N, TaylorFn&& taylor) {
  if (s < 1) throw UsageError("log-Gamma derivatives need s >= 1");
  const ExactRat sf(factorial(static_cast<long>(s)));
  long W = N;
  for (int attempt = 0; attempt < 12; ++attempt) {
    auto l = formal_log(taylor(W));
    PadicNumber r = l[s].times(sf);
    if (r.prec() >= N) return r.with_prec(N);
    W += N - r.prec();
  }
  throw InsufficientPrecision("log-Gamma derivative: working precision did not reach p^" + std::to_string(N));
}

}  // namespace

PadicNumber loggamma_deriv_at0(std::size_t s, long p, long N) {
  return loggamma_adaptive(s, N, [&](long W) { return gamma_taylor_at0(s, p, W); });
}

PadicNumber loggamma_deriv_at(const ExactRat& z, std::size_t s, long p, long N) {
  return loggamma_adaptive(s, N, [&](long W) { return gamma_taylor_at(z, s, p, W); });
}

// ---------------------------------------------------------------------------
// Finite differences
// ---------------------------------------------------------------------------

PadicNumber finite_difference_derivative(const PointEval& eval, const PadicApprox& z, long s, long m, Stencil stencil) {
  if (s < 1 || m < 1) throw UsageError("finite differences need s >= 1 and m >= 1");
  const long p = z.p();
  const long M = z.prec();
  const BigInt h = ipow(p, m);
  BigInt binom = 1;
  PadicApprox acc = PadicApprox::zero(p, M);
  for (long i = 0; i <= s; ++i) {
    if (i > 0) binom = binom * (s - i + 1) / i;
    BigInt offset = stencil == Stencil::Forward ? BigInt(i * h) : BigInt((s - 2 * i) * h);
    PadicApprox value = eval(z + PadicApprox(p, M, offset));
    bool negative = stencil == Stencil::Forward ? (s - i) % 2 : i % 2;
    PadicApprox term = PadicApprox(p, value.prec(), binom) * value;
    acc = negative ? acc - term : acc + term;
  }
  BigInt step = stencil == Stencil::Forward ? h : BigInt(2 * h);
  BigInt denom = 1;
  for (long i = 0; i < s; ++i) denom *= step;
  return PadicNumber::from_approx(acc).divided_by(ExactRat(denom));
}

OracleDerivative derivative_oracle(const PointEval& eval, const PadicApprox& z, long s, long m, Stencil stencil) {
  PadicNumber coarse = finite_difference_derivative(eval, z, s, m, stencil);
  PadicNumber fine = finite_difference_derivative(eval, z, s, m + 1, stencil);
  return {coarse, std::min(coarse.agreement(fine), coarse.prec())};
}

}  // namespace padic
