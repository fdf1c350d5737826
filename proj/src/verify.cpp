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

#include "padicl/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>

#include "padicl/dwork.hpp"
#include "padicl/gamma.hpp"
#include "padicl/lfunc.hpp"

namespace padic {

namespace {

struct Check {
  bool pass = true;
  std::optional<long> prec;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
  void at_prec(long n) { prec = prec ? std::min(*prec, n) : n; }
  void agree(const PadicNumber& a, const PadicNumber& b, long target, const std::string& what) {
    long n = a.agreement(b);
    at_prec(n);
    require(n >= target, what + ": agreement " + std::to_string(n) + " < " + std::to_string(target));
  }
  void zero(const PadicNumber& a, long target, const std::string& what) {
    at_prec(a.prec());
    require(a.prec() >= target && a.is_zero_at_prec(), what + ": not 0 mod p^" + std::to_string(target));
  }
  void equal(const PadicApprox& a, const PadicApprox& b, const std::string& what) {
    at_prec(std::min(a.prec(), b.prec()));
    require(a == b, what + ": " + a.rep().get_str() + " != " + b.rep().get_str());
  }
};

using Body = std::function<Check(long p, long N, std::mt19937_64& rng)>;

struct Identity {
  const char* id;
  const char* statement;
  Body body;
};

std::string at(const char* what, long v) { return std::string(what) + "=" + std::to_string(v); }

BigInt random_below(std::mt19937_64& rng, const BigInt& bound) {
  BigInt r = 0;
  for (int i = 0; i < 4; ++i) r = (r << 64) + BigInt(static_cast<unsigned long>(rng()));
  return r % bound;
}

// (-1)^a (ap)! / (p^a a!)
ExactRat gamma_at_multiple(long a, long p) {
  ExactRat q(factorial(a * p), ipow(p, a) * factorial(a));
  q.canonicalize();
  return a % 2 ? ExactRat(-q) : q;
}

// B_k = sum_{j} 1 / ((k - pj)! j! p^j), the coefficient of exp(x) exp(x^p / p).
std::vector<ExactRat> dwork_product_oracle(long p, long K) {
  std::vector<ExactRat> out;
  for (long k = 0; k < K; ++k) {
    ExactRat acc = 0;
    for (long j = 0; p * j <= k; ++j) acc += ExactRat(BigInt(1), factorial(k - p * j) * factorial(j) * ipow(p, j));
    out.push_back(acc);
  }
  return out;
}

TruncPowerSeries random_poly(std::mt19937_64& rng, std::size_t max_deg) {
  std::uniform_int_distribution<long> num(-30, 30), den(1, 6);
  std::size_t deg = rng() % (max_deg + 1);
  std::vector<ExactRat> c;
  for (std::size_t i = 0; i <= deg; ++i) {
    ExactRat q(num(rng), den(rng));
    q.canonicalize();
    c.push_back(q);
  }
  return TruncPowerSeries(std::move(c));
}

ExactRat eval_transform(const TruncPowerSeries& g, long x) { return mahler_eval_exact(mahler_transform(g), ExactRat(x)); }

Check check_sum_factorial(long p, long N, std::mt19937_64& rng) {
  Check c;
  for (long n = 1; n <= 3 * p; ++n) {
    BigInt expected = 0;
    if (n % p == 0) {
      long a = n / p;
      expected = ipow(p, a - 1) * factorial(a - 1);
      if (a % 2) expected = -expected;
    }
    c.equal(sum_factorial(n, p, N), PadicApprox(p, N, expected), at("n", n));
  }
  c.agree(sum_factorial_zero_case(p, N), -gamma_deriv_at0(1, p, N), N, "zero case vs -Gamma_p'(0)");
  auto B = compute_B(p, default_table_length(p, N));
  PadicApprox gp = gamma_morita(p, p, N);
  c.equal(shifted_mahler_sum(0, PadicApprox(p, N, p), B, N), gp, "s=0 x=p");
  c.equal(shifted_mahler_sum(1, PadicApprox(p, N, 1 + p), B, N), -(PadicApprox(p, N, 1 + p) * gp), "s=1 x=1+p");
  c.equal(shifted_mahler_sum(2, PadicApprox(p, N, 3), B, N), PadicApprox::zero(p, N), "s=2 x=3");
  for (int t = 0; t < 10; ++t) {
    long s = static_cast<long>(rng() % 4), u = static_cast<long>(rng() % 50);
    long x = s + p * u;
    PadicApprox expected = falling_factorial(PadicApprox(p, N, x), s) * gamma_morita(x - s, p, N);
    if (s % 2) expected = -expected;
    c.equal(shifted_mahler_sum(s, PadicApprox(p, N, x), B, N), expected, at("shifted x", x));
    c.equal(shifted_mahler_sum(s, PadicApprox(p, N, x + 1), B, N), PadicApprox::zero(p, N), at("shifted x", x + 1));
  }
  return c;
}

Check check_dual_route(long p, long N, std::mt19937_64& rng) {
  Check c;
  auto fm = compute_B(p, default_table_length(p, N)).mahler();
  const BigInt m = ipow(p, N);
  for (int t = 0; t < 50; ++t) {
    PadicApprox x(p, N, BigInt(p) * random_below(rng, m / p));
    c.equal(mahler_eval(fm, x, N).value.to_approx(), gamma_eval(x, N).value, "x=" + x.rep().get_str());
  }
  for (int t = 0; t < 50; ++t) {
    BigInt r = random_below(rng, m);
    if (r % p == 0) r += 1;
    PadicApprox u(p, N, r);
    c.zero(mahler_eval(fm, u, N).value, N, "unit " + r.get_str());
  }
  for (long a = 1; a <= 4; ++a)
    c.equal(mahler_eval(fm, PadicApprox(p, N, a * p), N).value.to_approx(),
            reduce_rational(gamma_at_multiple(a, p), p, N), at("a", a));
  c.zero(mahler_eval(fm, PadicApprox(p, N, 1), N).value, N, "[f](1)");
  return c;
}

Check check_inverse_roundtrip(long p, long, std::mt19937_64&) {
  Check c;
  const long K = 30;
  std::vector<ExactRat> values;
  for (long n = 0; n < K; ++n) values.push_back(n % p ? ExactRat(0) : gamma_at_multiple(n / p, p));
  auto g = inverse_transform(values, K);
  auto B = compute_B(p, K);
  for (long k = 0; k < K; ++k)
    c.require(g.coeffs()[static_cast<std::size_t>(k)] == B.B()[static_cast<std::size_t>(k)], at("B_k, k", k));
  return c;
}

Check check_route_equality(long p, long N, std::mt19937_64&) {
  Check c;
  for (long s = 2; s <= 6; ++s) {
    PadicNumber lim = lp_via_limit(s, p, N), gam = lp_via_gamma(s, p, N);
    c.agree(lim, gam, N, at("s", s));
    if (s % 2 == 0) {
      c.zero(lim, N, at("limit route, s", s));
      c.zero(gam, N, at("gamma route, s", s));
    }
  }
  PadicNumber g3 = lp_via_gamma(3, p, N);
  c.agree(lp_character(3, DirichletChar::trivial(), p, N), g3, N, "trivial character, s=3");
  for (long s : {3L, 5L}) {
    PadicNumber z = zeta_p(s, p, N).times(1 - ExactRat(BigInt(1), ipow(p, s)));
    c.agree(z, lp_via_limit(s, p, N), N, at("zeta rearrangement, s", s));
  }
  c.zero(zeta_p(4, p, N), N, "zeta_p(4)");
  return c;
}

Check check_delta_chain(long p, long N, std::mt19937_64&) {
  Check c;
  c.zero(delta(2, p, N).delta, N, "Delta_2");
  PadicNumber d3 = delta(3, p, N).delta;
  PadicNumber l3 = lp_via_limit(3, p, N + 1).divided_by(ExactRat(3));
  PadicNumber z3 = zeta_p(3, p, N + 1).times(1 - ExactRat(BigInt(1), ipow(p, 3))).divided_by(ExactRat(3));
  c.agree(d3, l3, N, "Delta_3 vs L_p(3)/3");
  c.agree(d3, z3, N, "Delta_3 vs (1-p^-3) zeta_p(3)/3");
  c.agree(l3, z3, N, "L_p(3)/3 vs (1-p^-3) zeta_p(3)/3");
  c.agree(d3, loggamma_deriv_at0(3, p, N + 2).times(ExactRat(-1, 6)), N, "Delta_3 vs -(log Gamma_p)'''(0)/6");
  return c;
}

Check check_frobenius(long p, long N, std::mt19937_64&) {
  Check c;
  if (p == 5) {
    try {
      frobenius_entry(p, N);
      c.require(false, "p = 5 was not rejected");
    } catch (const Unsupported& e) {
      c.detail = e.what();
    }
    return c;
  }
  auto e = frobenius_entry(p, N);
  c.at_prec(e.guaranteed_prec);
  c.require(e.agree, "routes disagree");
  c.agree(e.via_delta, e.via_zeta, N, "via_delta vs via_zeta");
  c.agree(e.via_delta, e.via_lp, N, "via_delta vs via_lp");
  return c;
}

Check check_dwork_recursion(long p, long, std::mt19937_64&) {
  Check c;
  const long K = 401;
  auto B = compute_B(p, K);
  auto oracle = dwork_product_oracle(p, K);
  for (long k = 0; k < K; ++k) {
    c.require(B.at(k) == oracle[static_cast<std::size_t>(k)], at("B_k vs exp(x) exp(x^p/p), k", k));
    if (k >= 1) c.require(ExactRat(k) * B.at(k) == B.at(k - 1) + B.at(k - p), at("recursion, k", k));
  }
  return c;
}

Check check_valuation_floor(long p, long, std::mt19937_64&) {
  Check c;
  const long K = 401;
  auto B = compute_B(p, K);
  ExactRat rho(2 * p - 1, p * p * (p - 1));
  rho.canonicalize();
  long first_negative = -1;
  for (long k = 0; k < K; ++k) {
    if (B.at(k) == 0) continue;
    long v = valuation(B.at(k), p);
    BigInt fl = BigInt(BigInt(k) * rho.get_num()) / rho.get_den();
    c.require(v >= -fl.get_si(), at("k", k));
    if (v < 0 && first_negative < 0) first_negative = k;
  }
  if (c.pass)
    c.detail = first_negative < 0 ? "all B_k p-integral for k <= 400"
                                   : "first non-integral B_k at k=" + std::to_string(first_negative);
  return c;
}

Check check_functional_equation(long p, long N, std::mt19937_64& rng) {
  Check c;
  for (int t = 0; t < 1000; ++t) {
    long n = static_cast<long>(rng() % 20001) - 10000;
    PadicApprox g = gamma_morita(n, p, N), g1 = gamma_morita(n + 1, p, N);
    c.equal(g1, n % p ? -(PadicApprox(p, N, n) * g) : -g, at("n", n));
  }
  return c;
}

Check check_stirling_basis(long, long, std::mt19937_64& rng) {
  Check c;
  const std::size_t K = 20;
  StirlingTable st(K, K);
  for (int t = 0; t < 40; ++t) {
    ExactRat x(static_cast<long>(rng() % 200) - 100, 1 + static_cast<long>(rng() % 7));
    x.canonicalize();
    ExactRat power = 1;
    std::vector<ExactRat> powers;
    for (std::size_t j = 0; j <= K; ++j, power *= x) powers.push_back(power);
    for (std::size_t k = 0; k <= K; ++k) {
      ExactRat acc = 0;
      for (std::size_t j = 0; j <= k; ++j) acc += ExactRat(st(k, j)) * powers[j];
      long kk = static_cast<long>(k);
      c.require(acc == falling_factorial(x, kk), at("stirling expansion, k", kk));
      ExactRat sign = kk % 2 ? -1 : 1;
      c.require(rising_factorial(x, kk) == sign * falling_factorial(ExactRat(-x), kk), at("rising vs falling, n", kk));
    }
  }
  return c;
}

Check check_transform_shift(long, long, std::mt19937_64& rng) {
  Check c;
  for (int t = 0; t < 20; ++t) {
    auto g = random_poly(rng, 8);
    for (std::size_t n = 0; n <= 3; ++n) {
      auto xng = g.times_x_power(n);
      long nn = static_cast<long>(n);
      for (long x = 0; x <= 20; ++x) {
        ExactRat rhs = falling_factorial(ExactRat(x), nn) * eval_transform(g, x - nn);
        if (nn % 2) rhs = -rhs;
        c.require(eval_transform(xng, x) == rhs, at("[x^n g], x", x));
      }
    }
    auto dg = g.derivative();
    for (long x = 0; x <= 20; ++x)
      c.require(eval_transform(dg, x) == eval_transform(g, x) - eval_transform(g, x + 1), at("[g'], x", x));
  }
  return c;
}

Check check_dcoef_recursion(long, long, std::mt19937_64&) {
  Check c;
  for (std::size_t s = 1; s < 8; ++s)
    for (std::size_t k = 0; k < 16; ++k)
      c.require(dcoef_exact(s, TruncPowerSeries::monomial(k + 1)) ==
                    ExactRat(static_cast<long>(k)) * dcoef_exact(s, TruncPowerSeries::monomial(k)) +
                        dcoef_exact(s - 1, TruncPowerSeries::monomial(k)),
                at("s", static_cast<long>(s)) + " " + at("k", static_cast<long>(k)));
  return c;
}

Check check_robert(long p, long N, std::mt19937_64&) {
  Check c;
  auto B = compute_B(p, 4 * static_cast<std::size_t>(p) + 2);
  const std::vector<ExactRat> h = robert_series(B).coeffs();
  for (long x = 1; x <= 3 * p; ++x) {
    ExactRat acc = 0;
    for (long k = 0; k <= x; ++k) {
      ExactRat term = h[static_cast<std::size_t>(k)] * falling_factorial(ExactRat(x), k);
      acc += k % 2 ? ExactRat(-term) : term;
    }
    c.equal(reduce_rational(acc, p, N), gamma_morita(x + 1, p, N), at("x", x));
  }
  return c;
}

Check check_loggamma_oddness(long p, long N, std::mt19937_64&) {
  Check c;
  for (std::size_t s : {2u, 4u, 6u}) c.zero(loggamma_deriv_at0(s, p, N), N, at("s", static_cast<long>(s)));
  PadicNumber g1 = gamma_deriv_at0(1, p, N + 4), g3 = gamma_deriv_at0(3, p, N + 4);
  c.agree(loggamma_deriv_at0(3, p, N), g3 - g1 * g1 * g1, N, "s=3 vs Gamma''' - Gamma'^3");
  return c;
}

Check check_derivative_oracle(long p, long N, std::mt19937_64&) {
  Check c;
  const bool central = p == 3;
  const long M = std::max(central ? 24L : 20L, 3 * N);
  PointEval eval = [](const PadicApprox& z) { return gamma_eval(z, z.prec()).value; };
  for (long s = 1; s <= 3; ++s) {
    auto oracle = derivative_oracle(eval, PadicApprox::zero(p, M), s, 3, central ? Stencil::Central : Stencil::Forward);
    c.at_prec(oracle.certified_prec);
    c.require(oracle.certified_prec >= 3, at("certified precision below 3 at s", s));
    long n = gamma_deriv_at0(static_cast<std::size_t>(s), p, M).agreement(oracle.value);
    c.require(n >= oracle.certified_prec, at("disagreement at s", s));
  }
  return c;
}

const std::vector<Identity>& identities() {
  static const std::vector<Identity> list = {
      {"dwork.sum_factorial",
       "sum_k B_k (n+k-1)! = 0 (p not dividing n), (-1)^a p^(a-1) (a-1)! (n = ap) for n = 1..3p; "
       "sum_{k>=1} B_k (k-1)! = -Gamma_p'(0); shifted sums sum B_k (-1)^k (x)_(k+s)",
       check_sum_factorial},
      {"mahler.dual_route", "[f](x) = Gamma_p(x) for v_p(x) >= 1 and 0 for units; [f](ap) = (-1)^a (ap)!/(p^a a!)",
       check_dual_route},
      {"mahler.inverse_roundtrip", "inverse transform of [f](0..29) recovers B_0..B_29 exactly",
       check_inverse_roundtrip},
      {"lfunc.route_equality",
       "Volkenborn limit = ((-1)^s/(s-1)!) (log Gamma_p)^(s)(0) for s = 2..6, 0 for even s; "
       "trivial character reduces to it; (1 - p^-s) zeta_p(s) = L_p(s, omega^(1-s))",
       check_route_equality},
      {"lfunc.delta_chain",
       "Delta_2 = 0; Delta_3 = L_p(3, omega^-2)/3 = (1 - p^-3) zeta_p(3)/3 = -(log Gamma_p)'''(0)/6",
       check_delta_chain},
      {"lfunc.frobenius_entry", "p^3 (24/25) Delta_3 = p^3 (8/25) L_p(3, omega^-2) = (p^3 - 1)(8/25) zeta_p(3); p = 5 rejected",
       check_frobenius},
      {"dwork.recursion", "k B_k = B_(k-1) + B_(k-p) and B_k = coefficient of exp(x) exp(x^p/p), k <= 400",
       check_dwork_recursion},
      {"dwork.valuation_floor", "v_p(B_k) >= -floor(k (2p-1)/(p^2 (p-1))) for k <= 400", check_valuation_floor},
      {"gamma.functional_equation", "Gamma_p(n+1) = -n Gamma_p(n) (p not dividing n), -Gamma_p(n) otherwise, 1000 random |n| <= 10^4",
       check_functional_equation},
      {"series.stirling_basis", "sum_j s(k,j) x^j = (x)_k and (x)^n = (-1)^n (-x)_n", check_stirling_basis},
      {"series.transform_shift", "[x^n g](x) = (-1)^n (x)_n [g](x-n) and [g'] = -nabla [g] on random polynomials",
       check_transform_shift},
      {"series.dcoef_recursion", "[D^s x^(k+1)]_0 = k [D^s x^k]_0 + [D^(s-1) x^k]_0", check_dcoef_recursion},
      {"dwork.robert_identity", "[-(1 + x + ... + x^(p-1)) f](x) = Gamma_p(x+1) at integers 1..3p", check_robert},
      {"gamma.loggamma_oddness", "(log Gamma_p)^(2m)(0) = 0 for m <= 3; (log Gamma_p)'''(0) = Gamma_p'''(0) - Gamma_p'(0)^3",
       check_loggamma_oddness},
      {"gamma.derivative_oracle", "Gamma_p^(s)(0), s = 1..3, agrees with the step p^3 difference quotient to its certified precision",
       check_derivative_oracle},
  };
  return list;
}

}  // namespace

bool VerifyReport::all_pass() const {
  return std::all_of(identities.begin(), identities.end(), [](const IdentityResult& r) { return r.pass; });
}

const std::vector<std::string>& identity_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& i : identities()) out.emplace_back(i.id);
    return out;
  }();
  return ids;
}

VerifyReport verify_suite(const VerifyOptions& options) {
  require_odd_prime(options.p);
  if (options.N < 1) throw UsageError("precision must be >= 1");
  for (const auto& id : options.only)
    if (std::find(identity_ids().begin(), identity_ids().end(), id) == identity_ids().end())
      throw UsageError("unknown identity id: " + id);
  VerifyReport report{options.p, options.N, options.seed, {}};
  const auto& list = identities();
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Identity& ident = list[i];
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), ident.id) == options.only.end())
      continue;
    std::mt19937_64 rng(options.seed * 1000003UL + i);
    IdentityResult r;
    r.id = ident.id;
    r.statement = ident.statement;
    auto start = std::chrono::steady_clock::now();
    try {
      Check c = ident.body(options.p, options.N, rng);
      r.pass = c.pass;
      r.guaranteed_prec = c.prec;
      r.detail = c.detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report.identities.push_back(std::move(r));
  }
  return report;
}

Json to_json(const VerifyReport& report, bool timing) {
  Json list = Json::array();
  Json elapsed = Json::object();
  for (const auto& r : report.identities) {
    Json j{{"id", r.id}, {"statement", r.statement}, {"status", r.pass ? "pass" : "fail"}};
    j["guaranteed_prec"] = r.guaranteed_prec ? Json(*r.guaranteed_prec) : Json(nullptr);
    if (!r.detail.empty()) j["detail"] = r.detail;
    list.push_back(std::move(j));
    elapsed[r.id] = r.elapsed_ms;
  }
  Json out{{"p", report.p}, {"N", report.N}, {"seed", report.seed}, {"pass", report.all_pass()}, {"identities", list}};
  if (timing) out["meta"] = Json{{"elapsed_ms", elapsed}};
  return out;
}

}  // namespace padic
