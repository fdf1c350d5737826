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

#include "doctest.h"
#include "padicl/gamma.hpp"
#include "padicl/lfunc.hpp"

using namespace padic;

namespace {

// Term-by-term sum with one modular inverse per term.
BigInt naive_level_sum(const DirichletChar& chi, long m, long p, long L, long W) {
  BigInt mod = ipow(p, W), end = BigInt(chi.modulus()) * ipow(p, L), total = 0;
  for (BigInt n = 1; n < end; ++n) {
    if (n % p == 0) continue;
    ExactRat term = chi(n);
    for (long e = 0; e < m; ++e) term /= ExactRat(n);
    total += reduce_rational(term, p, W).rep();
  }
  return total % mod;
}

}  // namespace

TEST_CASE("characters") {
  auto chi = DirichletChar::kronecker(-4);
  CHECK(chi.modulus() == 4);
  CHECK(chi(1) == 1);
  CHECK(chi(3) == -1);
  CHECK(chi(2) == 0);
  CHECK(DirichletChar::kronecker(5)(2) == -1);
  CHECK_THROWS_AS(DirichletChar::kronecker(12 * 4), UsageError);
  CHECK_THROWS_AS(DirichletChar::kronecker(1), UsageError);
  CHECK(is_fundamental_discriminant(-3));
  CHECK(is_fundamental_discriminant(8));
  CHECK(is_fundamental_discriminant(12));
  CHECK_FALSE(is_fundamental_discriminant(-12 * 9));
  CHECK_THROWS_AS(DirichletChar::kronecker(-3).validate(3), UsageError);
  DirichletChar::kronecker(-3).validate(5);
  CHECK_THROWS_AS(DirichletChar(4, {0, 1, 1, -1}).validate(5), UsageError);
  CHECK_THROWS_AS(DirichletChar(5, {0, 1, 1, -1, 1}).validate(3), UsageError);
  CHECK_THROWS_AS(DirichletChar(5, {0, 1, 3, 1, 1}).validate(3), UsageError);
  DirichletChar(3, {0, 1, 1}).validate(5);
}

TEST_CASE("Volkenborn kernels agree with the naive sum") {
  for (long p : {3L, 5L, 7L}) {
    for (const auto& chi : {DirichletChar::trivial(), DirichletChar::kronecker(-4), DirichletChar::kronecker(8)}) {
      for (long m = 1; m <= 4; ++m) {
        for (long L = 1; L <= 3; ++L) {
          const long W = 9;
          BigInt naive = naive_level_sum(chi, m, p, L, W);
          CHECK(volkenborn_level_sum(chi, m, p, L, W, VolkenbornKernel::Blocked) == naive);
          CHECK(volkenborn_level_sum(chi, m, p, L, W, VolkenbornKernel::Direct) == naive);
        }
      }
    }
  }
  // the mpz path of the direct kernel
  CHECK(volkenborn_level_sum(DirichletChar::trivial(), 2, 7, 2, 30, VolkenbornKernel::Direct) ==
        volkenborn_level_sum(DirichletChar::trivial(), 2, 7, 2, 30, VolkenbornKernel::Blocked));
  // multi-threaded direct sum over a longer range
  CHECK(volkenborn_level_sum(DirichletChar::trivial(), 3, 5, 8, 14, VolkenbornKernel::Direct, 3) ==
        volkenborn_level_sum(DirichletChar::trivial(), 3, 5, 8, 14, VolkenbornKernel::Blocked));
}

TEST_CASE("Volkenborn integrals over the units") {
  for (long p : {3L, 5L, 7L}) {
    const long N = 6;
    for (long m : {1L, 3L, 5L}) CHECK(volkenborn_unit_power(m, p, N).value.is_zero_at_prec());
    for (long m : {2L, 4L}) {
      auto V = volkenborn_unit_power(m, p, N);
      CHECK(V.value.prec() == N);
      VolkenbornOptions direct;
      direct.kernel = VolkenbornKernel::Direct;
      if (p < 7) CHECK(volkenborn_unit_power(m, p, N, direct).value.agreement(V.value) >= N);
      // (log Gamma_p)^(m+1)(0) = -(m-1)! * integral
      PadicNumber lg = loggamma_deriv_at0(static_cast<std::size_t>(m + 1), p, N + 2);
      PadicNumber rhs = V.value.times(ExactRat(-factorial(m - 1)));
      CHECK(lg.agreement(rhs) >= N - factorial_valuation(m - 1, p));
    }
  }
  VolkenbornOptions tight;
  tight.max_level = 2;
  CHECK_THROWS_AS(volkenborn_unit_power(2, 5, 10, tight), NoStabilization);
}

TEST_CASE("route equality and even vanishing") {
  for (long p : {3L, 5L, 7L}) {
    const long N = 6;
    for (long s = 2; s <= 6; ++s) {
      PadicNumber lim = lp_via_limit(s, p, N), gam = lp_via_gamma(s, p, N);
      CHECK(lim.prec() >= N);
      CHECK(gam.prec() >= N);
      CHECK(lim.agreement(gam) >= N);
      if (s % 2 == 0) {
        CHECK(lim.is_zero_at_prec());
        CHECK(gam.is_zero_at_prec());
      }
    }
  }
  CHECK_THROWS_AS(lp_via_limit(1, 5, 6), UsageError);
}

TEST_CASE("character formula") {
  for (long p : {5L, 7L}) {
    const long N = 5;
    CHECK(lp_character(3, DirichletChar::trivial(), p, N).agreement(lp_via_gamma(3, p, N)) >= N);
    for (long D : {-3L, -4L}) {
      auto chi = DirichletChar::kronecker(D);
      for (long s : {2L, 3L}) {
        PadicNumber koblitz = lp_character(s, chi, p, N);
        PadicNumber limit = lp_character_via_limit(s, chi, p, N);
        CHECK(koblitz.agreement(limit) >= N);
      }
    }
  }
  // even character, even s: the terms at a/d and 1 - a/d cancel
  for (long p : {3L, 7L}) {
    auto chi = DirichletChar::kronecker(5);
    for (long s : {2L, 4L}) {
      CHECK(lp_character(s, chi, p, 5).is_zero_at_prec());
      CHECK(lp_character_via_limit(s, chi, p, 5).is_zero_at_prec());
    }
  }
  CHECK_THROWS_AS(lp_character(3, DirichletChar::kronecker(-3), 3, 5), UsageError);
}

TEST_CASE("zeta_p") {
  for (long p : {3L, 5L, 7L}) {
    const long N = 6;
    CHECK(zeta_p(2, p, N).is_zero_at_prec());
    CHECK(zeta_p(4, p, N).is_zero_at_prec());
    PadicNumber z = zeta_p(3, p, N), L = lp_via_limit(3, p, N);
    CHECK(z.times(1 - ExactRat(BigInt(1), ipow(p, 3))).agreement(L) >= N);
    CHECK(zeta_p(3, p, N, LpRoute::Gamma).agreement(z) >= N);
  }
}

TEST_CASE("Delta chain") {
  for (long p : {3L, 7L, 11L}) {
    const long N = 6;
    CHECK(delta(2, p, N).delta.is_zero_at_prec());
    DeltaReport d3 = delta(3, p, N);
    CHECK(d3.delta.prec() >= N);
    PadicNumber L3 = lp_via_limit(3, p, N + 1).divided_by(ExactRat(3));
    PadicNumber Z3 = zeta_p(3, p, N + 1).times(1 - ExactRat(BigInt(1), ipow(p, 3))).divided_by(ExactRat(3));
    CHECK(d3.delta.agreement(L3) >= N);
    CHECK(d3.delta.agreement(Z3) >= N);
    CHECK(L3.agreement(Z3) >= N);
    PadicNumber lg3 = loggamma_deriv_at0(3, p, N + 2).times(ExactRat(-1, 6));
    CHECK(d3.delta.agreement(lg3) >= N);
  }
}

TEST_CASE("Frobenius entry") {
  CHECK_THROWS_AS(frobenius_entry(5, 6), Unsupported);
  for (long p : {3L, 7L, 11L}) {
    auto e = frobenius_entry(p, 6);
    CHECK(e.agree);
    CHECK(e.guaranteed_prec >= 4);
    CHECK(e.via_delta.valuation() >= 3 + e.delta3_valuation);
    if (e.delta3_valuation >= 0) CHECK(e.via_delta.valuation() >= 3);
    PadicNumber scaled = e.via_zeta.divided_by(ExactRat(ipow(p, 3) - 1));
    CHECK(scaled.agreement(zeta_p(3, p, 6).times(ExactRat(8, 25))) >= 6);
  }
}
