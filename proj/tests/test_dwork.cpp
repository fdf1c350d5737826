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

#include <random>

#include "doctest.h"
#include "padicl/dwork.hpp"

using namespace padic;

namespace {

// (-1)^n prod_{1 <= j < n, p does not divide j} j mod p^N
PadicApprox morita(long n, long p, long N) {
  BigInt m = ipow(p, N), acc = 1;
  for (long j = 1; j < n; ++j)
    if (j % p) acc = acc * j % m;
  return PadicApprox(p, N, n % 2 ? BigInt(-acc) : acc);
}

// exp(x + x^p/p) by summing (x + x^p/p)^m / m! directly.
std::vector<ExactRat> exp_oracle(long p, std::size_t K) {
  std::vector<ExactRat> u(K, ExactRat(0)), power(K, ExactRat(0)), out(K, ExactRat(0));
  if (K > 1) u[1] = 1;
  if (static_cast<std::size_t>(p) < K) u[static_cast<std::size_t>(p)] = ExactRat(1, p);
  power[0] = 1;
  ExactRat inv_fact = 1;
  for (std::size_t m = 0; m < K; ++m) {
    for (std::size_t k = 0; k < K; ++k) out[k] += power[k] * inv_fact;
    std::vector<ExactRat> next(K, ExactRat(0));
    for (std::size_t i = 0; i < K; ++i)
      for (std::size_t j = 0; i + j < K; ++j) next[i + j] += power[i] * u[j];
    power = std::move(next);
    inv_fact /= ExactRat(static_cast<long>(m + 1));
  }
  return out;
}

}  // namespace

TEST_CASE("compute_B examples") {
  auto B = compute_B(3, 10);
  CHECK(B.B()[0] == 1);
  CHECK(B.B()[1] == 1);
  CHECK(B.B()[2] == ExactRat(1, 2));
  CHECK(B.B()[3] == ExactRat(1, 2));
  CHECK(B.at(-1) == 0);
  CHECK_THROWS_AS(B.at(10), UsageError);
  CHECK_THROWS_AS(compute_B(9, 4), UsageError);
  for (long p : {3L, 5L, 7L}) {
    auto Bp = compute_B(p, static_cast<std::size_t>(3 * p));
    CHECK(Bp.B() == exp_oracle(p, static_cast<std::size_t>(3 * p)));
    // [f](1) = B_0 - B_1
    CHECK(mahler_eval(Bp.mahler(), PadicApprox(p, 6, 1), 6).value.is_zero_at_prec());
  }
}

TEST_CASE("recursion and valuation floor up to 400") {
  for (long p : {3L, 5L, 7L, 11L}) {
    auto B = compute_B(p, 401);
    for (long k = 1; k <= 400; ++k) CHECK(ExactRat(k) * B.at(k) == B.at(k - 1) + B.at(k - p));
    for (long k = 0; k <= 400; ++k) CHECK(valuation(B.at(k), p) >= dwork_valuation_floor(p, k));
    // B_k is p-integral below p^2 and not at p^2.
    for (long k = 0; k < p * p && k <= 400; ++k) CHECK(valuation(B.at(k), p) >= 0);
    if (p * p <= 400) CHECK(valuation(B.at(p * p), p) < 0);
  }
  CHECK(valuation(compute_B(3, 10).at(9), 3) == -2);
}

TEST_CASE("truncation_index") {
  CHECK(truncation_index(3, 6, FactorialSum{1}) == 30);
  for (long p : {3L, 5L, 7L}) {
    std::size_t prev = 0;
    for (long N = 1; N <= 10; ++N) {
      std::size_t K = truncation_index(p, N, FactorialSum{1});
      CHECK(K >= prev);
      prev = K;
      // brute force: every term past K is small, the term before is not
      auto floor_at = [&](long k) { return factorial_valuation(k, p) + dwork_valuation_floor(p, k); };
      for (long k = static_cast<long>(K); k < 3000; ++k) CHECK(floor_at(k) >= N);
      if (K > 0) CHECK(floor_at(static_cast<long>(K) - 1) < N);
    }
    CHECK(truncation_index(p, 1, FactorialSum{1}) <= truncation_index(p, 2, FactorialSum{1}));
  }
}

TEST_CASE("certified Mahler cutoff dominates the measured one") {
  for (long p : {3L, 5L, 7L}) {
    const long N = 6;
    std::size_t K = truncation_index(p, N, MahlerEval{});
    auto B = compute_B(p, K + 200);
    // Measured: last index whose term B_k k! still has valuation below N.
    long last_big = -1;
    for (std::size_t k = 0; k < B.size(); ++k)
      if (B.B()[k] != 0 && valuation(B.B()[k], p) + factorial_valuation(static_cast<long>(k), p) < N)
        last_big = static_cast<long>(k);
    CHECK(static_cast<long>(K) > last_big);
    MESSAGE("p=" << p << " measured v_p(B_k) slope " << measured_valuation_slope(B));
  }
}

TEST_CASE("factorial sums reproduce the closed forms") {
  for (long p : {3L, 5L, 7L}) {
    const long N = 6;
    auto B = compute_B(p, default_table_length(p, N) + 12 * static_cast<std::size_t>(p));
    for (long n = 1; n <= 3 * p; ++n) {
      PadicApprox expected = PadicApprox(p, N, sum_factorial_closed_form(n, p));
      CHECK(sum_factorial(n, B, N) == expected);
    }
    CHECK(sum_factorial(p, B, N).rep() == ipow(p, N) - 1);
    CHECK(sum_factorial(2 * p, B, N).rep() == p);
  }
  CHECK(sum_factorial(4, 5, 6).rep() == 0);
}

TEST_CASE("zero case") {
  for (long p : {3L, 5L, 7L}) {
    const long N = 6;
    auto B = compute_B(p, default_table_length(p, N) + 20);
    PadicNumber z = sum_factorial_zero_case(B, N);
    CHECK(z.agreement(dcoef(1, B.series(), p, N)) >= N);
    // Partial sums at K and K + p agree.
    std::size_t K = truncation_index(p, N, FactorialSum{0});
    ExactRat a = 0, b = 0;
    BigInt fact = 1;
    for (std::size_t k = 1; k < K + static_cast<std::size_t>(p); ++k) {
      if (k > 1) fact *= static_cast<unsigned long>(k - 1);
      if (k < K) a += B.B()[k] * ExactRat(fact);
      b += B.B()[k] * ExactRat(fact);
    }
    CHECK(PadicNumber(p, a, N).agreement(PadicNumber(p, b, N)) >= N);
  }
}

TEST_CASE("shifted Mahler sums") {
  for (long p : {3L, 5L, 7L}) {
    const long N = 6;
    auto B = compute_B(p, default_table_length(p, N));
    CHECK(shifted_mahler_sum(0, PadicApprox(p, N, p), B, N) == morita(p, p, N));
    CHECK(shifted_mahler_sum(1, PadicApprox(p, N, 1 + p), B, N) ==
          -(PadicApprox(p, N, 1 + p) * morita(p, p, N)));
    CHECK(shifted_mahler_sum(2, PadicApprox(p, N, 3), B, N).is_zero());
    std::mt19937_64 rng(static_cast<unsigned long>(p));
    for (int t = 0; t < 10; ++t) {
      long s = static_cast<long>(rng() % 4);
      long u = static_cast<long>(rng() % 50);
      long x = s + p * u;  // |x - s| < 1
      PadicApprox xa(p, N, x);
      PadicApprox expected = falling_factorial(xa, s) * morita(x - s, p, N);
      if (s % 2) expected = -expected;
      CHECK(shifted_mahler_sum(s, xa, B, N) == expected);
      long y = s + 1 + p * u;  // |y - s| = 1
      CHECK(shifted_mahler_sum(s, PadicApprox(p, N, y), B, N).is_zero());
    }
  }
}

TEST_CASE("gamma via unit shift") {
  for (long p : {3L, 5L, 7L}) {
    const long N = 6;
    auto B = compute_B(p, default_table_length(p, N));
    CHECK(gamma_via_unit_shift(1, PadicApprox::zero(p, N), B, N).rep() == ipow(p, N) - 1);
    CHECK(gamma_via_unit_shift(2, PadicApprox::zero(p, N), B, N).rep() == 1);
    std::mt19937_64 rng(static_cast<unsigned long>(11 * p));
    for (int t = 0; t < 20; ++t) {
      long a = 1 + static_cast<long>(rng() % static_cast<unsigned long>(p - 1));
      long x = p * static_cast<long>(rng() % 40);
      CHECK(gamma_via_unit_shift(a, PadicApprox(p, N, x), B, N) == morita(a + x, p, N));
    }
    CHECK_THROWS_AS(gamma_via_unit_shift(p, PadicApprox::zero(p, N), B, N), UsageError);
    CHECK_THROWS_AS(gamma_via_unit_shift(1, PadicApprox(p, N, 1), B, N), UsageError);
  }
}

TEST_CASE("Robert identity at integer points") {
  for (long p : {3L, 5L, 7L}) {
    const long N = 6;
    auto B = compute_B(p, 4 * static_cast<std::size_t>(p) + 2);
    auto h = robert_series(B);
    std::vector<ExactRat> hk = h.coeffs();
    for (long x = 1; x <= 3 * p; ++x) {
      // [h](x) is a finite sum at a non-negative integer.
      ExactRat acc = 0;
      for (long k = 0; k <= x; ++k) {
        ExactRat term = hk[static_cast<std::size_t>(k)] * falling_factorial(ExactRat(x), k);
        acc += k % 2 ? ExactRat(-term) : term;
      }
      CHECK(reduce_rational(acc, p, N) == morita(x + 1, p, N));
    }
  }
}

TEST_CASE("[D^s x^n f]_0 closed form") {
  for (long p : {3L, 5L, 7L}) {
    const long N = 6;
    const std::size_t s_max = 3;
    // Work at a higher precision so the closed form's products are known to p^N.
    const long W = N + 6;
    auto B = compute_B(p, default_table_length(p, W, s_max) + 6 * static_cast<std::size_t>(p));
    auto t = taylor_from_mahler(B.mahler(), s_max, p, W);
    for (std::size_t n = 1; n <= 2 * static_cast<std::size_t>(p); ++n) {
      for (std::size_t s = 1; s <= s_max; ++s) {
        PadicNumber lhs = dcoef_xn_f(s, n, B, N);
        if (n % static_cast<std::size_t>(p)) {
          CHECK(lhs.is_zero_at_prec());
          continue;
        }
        auto P = scaled_falling_poly(static_cast<long>(n) / p, p);
        PadicNumber acc = PadicNumber::zero(p, W);
        for (std::size_t i = 0; i <= s && i < P.order(); ++i) acc = acc + t[s - i].times(P.coeffs()[i]);
        if (s % 2) acc = -acc;
        CHECK(lhs.agreement(acc) >= std::min<long>(N, acc.prec()));
        if (n == static_cast<std::size_t>(p)) {
          PadicNumber remark = s % 2 ? -t[s - 1] : t[s - 1];
          CHECK(lhs.agreement(remark) >= N);
        }
      }
    }
  }
}
