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

#include "padicl/dwork.hpp"

#include <algorithm>
#include <string>

namespace padic {

namespace {

void require_table(std::size_t needed, const DworkCoeffs& B, const char* what) {
  if (needed > B.size())
    throw TailNotCertified(std::string(what) + ": needs B_0..B_" + std::to_string(needed - 1) + ", table has " +
                           std::to_string(B.size()) + " entries");
}

// v_p((n + k - 1)!) - floor(k rho), a floor for the k-th factorial-sum term.
long factorial_sum_floor(long p, long n, long k) {
  return factorial_valuation(n + k - 1, p) + dwork_valuation_floor(p, k);
}

}  // namespace

ExactRat dwork_rate(long p) { return ExactRat(2 * p - 1, p * p * (p - 1)); }

long dwork_valuation_floor(long p, long k) { return CoefficientFloor{p, dwork_rate(p), 0}.at(k); }

DworkCoeffs::DworkCoeffs(long p, std::vector<ExactRat> B) : p_(p), B_(std::move(B)) { require_odd_prime(p); }

const ExactRat& DworkCoeffs::at(long k) const {
  static const ExactRat kZero(0);
  if (k < 0) return kZero;
  if (static_cast<std::size_t>(k) >= B_.size())
    throw UsageError("B_" + std::to_string(k) + " lies past the table of " + std::to_string(B_.size()));
  return B_[static_cast<std::size_t>(k)];
}

CoefficientFloor DworkCoeffs::floor() const { return {p_, dwork_rate(p_), 0}; }

TruncPowerSeries DworkCoeffs::series() const { return TruncPowerSeries(B_, SeriesTail::bounded(floor())); }

MahlerCoeffs DworkCoeffs::mahler() const { return mahler_transform(series()); }

DworkCoeffs compute_B(long p, std::size_t K) {
  require_odd_prime(p);
  if (K == 0) throw UsageError("compute_B: K must be at least 1");
  std::vector<ExactRat> B(K);
  B[0] = 1;
  for (std::size_t k = 1; k < K; ++k) {
    ExactRat acc = B[k - 1];
    if (k >= static_cast<std::size_t>(p)) acc += B[k - static_cast<std::size_t>(p)];
    B[k] = acc / ExactRat(static_cast<long>(k));
  }
  return DworkCoeffs(p, std::move(B));
}

std::size_t truncation_index(long p, long N, const TruncationContext& context) {
  require_odd_prime(p);
  const ExactRat rho = dwork_rate(p);
  if (const auto* fs = std::get_if<FactorialSum>(&context)) {
    if (fs->n < 0) throw UsageError("factorial sums need n >= 0");
    const long n = fs->n;
    // v_p((n + k - 1)!) >= v_p((k - 1)!); n = 0 starts at k = 1.
    LinearLogModel model{ExactRat(1, p - 1) - rho, ExactRat(1, p - 1) + 1, 1};
    return certified_cutoff(
        p, N, [&](long k) { return n + k >= 1 ? factorial_sum_floor(p, n, k) : kExactPrec; }, model, n == 0 ? 1 : 0);
  }
  SeriesTail tail = SeriesTail::bounded({p, rho, 0});
  if (std::holds_alternative<MahlerEval>(context)) return mahler_cutoff(tail, p, N);
  const auto& t = std::get<TaylorAt0>(context);
  std::size_t K = 1;
  for (std::size_t j = 0; j <= t.s_max; ++j) K = std::max(K, taylor_cutoff(tail, j, p, N));
  return K;
}

std::size_t default_table_length(long p, long N, std::size_t s_max) {
  std::size_t K = truncation_index(p, N, FactorialSum{0});
  K = std::max(K, truncation_index(p, N, MahlerEval{}));
  K = std::max(K, truncation_index(p, N, TaylorAt0{s_max}));
  return K + static_cast<std::size_t>(p);
}

PadicApprox sum_factorial(long n, const DworkCoeffs& B, long N) {
  const long p = B.p();
  if (n < 1) throw UsageError("sum_factorial needs n >= 1");
  std::size_t K = truncation_index(p, N, FactorialSum{n});
  require_table(K, B, "sum_factorial");
  ExactRat acc = 0;
  BigInt fact = factorial(n - 1);
  for (std::size_t k = 0; k < K; ++k) {
    if (k > 0) fact *= static_cast<unsigned long>(n) + k - 1;
    acc += B.B()[k] * ExactRat(fact);
  }
  return PadicNumber(p, acc, N).to_approx();
}

PadicApprox sum_factorial(long n, long p, long N) {
  return sum_factorial(n, compute_B(p, truncation_index(p, N, FactorialSum{n})), N);
}

BigInt sum_factorial_closed_form(long n, long p) {
  if (n % p != 0) return 0;
  long a = n / p;
  BigInt v = ipow(p, a - 1) * factorial(a - 1);
  return a % 2 ? BigInt(-v) : v;
}

PadicNumber sum_factorial_zero_case(const DworkCoeffs& B, long N) {
  const long p = B.p();
  std::size_t K = truncation_index(p, N, FactorialSum{0});
  require_table(K, B, "sum_factorial_zero_case");
  ExactRat acc = 0;
  BigInt fact = 1;
  for (std::size_t k = 1; k < K; ++k) {
    if (k > 1) fact *= static_cast<unsigned long>(k - 1);
    acc += B.B()[k] * ExactRat(fact);
  }
  return PadicNumber(p, acc, N);
}

PadicNumber sum_factorial_zero_case(long p, long N) {
  return sum_factorial_zero_case(compute_B(p, truncation_index(p, N, FactorialSum{0})), N);
}

PadicApprox shifted_mahler_sum(long s, const PadicApprox& x, const DworkCoeffs& B, long N) {
  if (s < 0) throw UsageError("shifted_mahler_sum: s must be >= 0");
  if (x.p() != B.p()) throw UsageError("shifted_mahler_sum: prime mismatch");
  // c_k = (-1)^k B_{k-s}; v_p(B_{k-s}) >= -floor((k-s) rho) >= -floor(k rho).
  std::vector<ExactRat> c(B.size() + static_cast<std::size_t>(s));
  for (std::size_t k = 0; k < c.size(); ++k) {
    const ExactRat& b = B.at(static_cast<long>(k) - s);
    c[k] = k % 2 ? ExactRat(-b) : b;
  }
  MahlerCoeffs m(std::move(c), SeriesTail::bounded(B.floor()));
  return mahler_eval(m, x, N).value.to_approx();
}

PadicApprox shifted_mahler_sum(long s, const PadicApprox& x, long N) {
  const long p = x.p();
  return shifted_mahler_sum(s, x, compute_B(p, truncation_index(p, N, MahlerEval{})), N);
}

PadicApprox gamma_via_unit_shift(long a, const PadicApprox& x, const DworkCoeffs& B, long N) {
  const long p = B.p();
  if (x.p() != p) throw UsageError("gamma_via_unit_shift: prime mismatch");
  if (a <= 0 || a >= p) throw UsageError("gamma_via_unit_shift: need 0 < a < p");
  if (x.with_prec(std::min(x.prec(), N)).valuation() < 1) throw UsageError("gamma_via_unit_shift: need |x| < 1");
  PadicApprox fx = mahler_eval(B.mahler(), x, N).value.to_approx();
  PadicApprox r = rising_factorial(x.with_prec(N) + PadicApprox::one(p, N), a - 1) * fx;
  return a % 2 ? -r : r;
}

PadicApprox gamma_via_unit_shift(long a, const PadicApprox& x, long N) {
  const long p = x.p();
  return gamma_via_unit_shift(a, x, compute_B(p, truncation_index(p, N, MahlerEval{})), N);
}

PadicNumber dcoef_xn_f(std::size_t s, std::size_t n, const DworkCoeffs& B, long N) {
  return dcoef(s, B.series().times_x_power(n), B.p(), N);
}

TruncPowerSeries scaled_falling_poly(long a, long p) {
  std::vector<ExactRat> poly{ExactRat(1)};
  for (long i = 0; i < a; ++i) {
    // multiply by (x - i p)
    std::vector<ExactRat> next(poly.size() + 1, ExactRat(0));
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] += poly[j];
      next[j] -= poly[j] * ExactRat(i * p);
    }
    poly = std::move(next);
  }
  return TruncPowerSeries(std::move(poly));
}

TruncPowerSeries robert_series(const DworkCoeffs& B) {
  std::vector<ExactRat> q(static_cast<std::size_t>(B.p()), ExactRat(-1));
  return B.series().times(TruncPowerSeries(std::move(q)));
}

double measured_valuation_slope(const DworkCoeffs& B) {
  long first = -1, last = -1;
  long v_first = 0, v_last = 0;
  for (std::size_t k = 0; k < B.size(); ++k) {
    if (B.B()[k] == 0) continue;
    long v = valuation(B.B()[k], B.p());
    if (first < 0) {
      first = static_cast<long>(k);
      v_first = v;
    }
    last = static_cast<long>(k);
    v_last = v;
  }
  if (last <= first) return 0.0;
  return static_cast<double>(v_last - v_first) / static_cast<double>(last - first);
}

}  // namespace padic
