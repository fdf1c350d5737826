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

#include "padicl/series.hpp"

#include <algorithm>
#include <string>

namespace padic {

namespace {

constexpr long kNoTerm = kExactPrec;

long min_valuation(std::span<const ExactRat> coeffs, long p) {
  long v = kExactPrec;
  for (const auto& c : coeffs) v = std::min(v, valuation(c, p));
  return v;
}

void require_table(std::size_t needed, std::size_t have, const char* what) {
  if (needed > have)
    throw TailNotCertified(std::string(what) + ": certified truncation needs " + std::to_string(needed) +
                           " coefficients, table has " + std::to_string(have));
}

// Proven lower bound for v_p(s(k, j)), j >= 1: s(k, j) is, up to sign, an
// elementary symmetric function of 1..k-1 of degree k-j.
long stirling_floor(long k, long j, long p) {
  if (k < j) return kNoTerm;
  if (k <= 1) return 0;
  return factorial_valuation(k - 1, p) - (j - 1) * floor_log(k - 1, p);
}

}  // namespace

// ---------------------------------------------------------------------------
// TruncPowerSeries
// ---------------------------------------------------------------------------

TruncPowerSeries::TruncPowerSeries(std::vector<ExactRat> coeffs, SeriesTail tail)
    : coeffs_(std::move(coeffs)), tail_(std::move(tail)) {}

TruncPowerSeries TruncPowerSeries::monomial(std::size_t n, const ExactRat& c) {
  std::vector<ExactRat> v(n + 1, ExactRat(0));
  v[n] = c;
  return TruncPowerSeries(std::move(v));
}

ExactRat TruncPowerSeries::coeff(std::size_t k) const {
  if (k < coeffs_.size()) return coeffs_[k];
  if (is_polynomial()) return 0;
  throw UsageError("coefficient " + std::to_string(k) + " lies past the stored table");
}

TruncPowerSeries TruncPowerSeries::times_x_power(std::size_t n) const {
  std::vector<ExactRat> v(n, ExactRat(0));
  v.insert(v.end(), coeffs_.begin(), coeffs_.end());
  // A shift only moves coefficients to larger indices, where the floor is lower.
  return TruncPowerSeries(std::move(v), tail_);
}

TruncPowerSeries TruncPowerSeries::times(const TruncPowerSeries& polynomial) const {
  if (!polynomial.is_polynomial()) throw UsageError("times: right factor must be a polynomial");
  const auto& q = polynomial.coeffs_;
  std::size_t len = coeffs_.empty() || q.empty() ? 0 : coeffs_.size() + (is_polynomial() ? q.size() - 1 : 0);
  std::vector<ExactRat> out(len, ExactRat(0));
  for (std::size_t k = 0; k < len; ++k)
    for (std::size_t i = 0; i < q.size() && i <= k; ++i)
      if (k - i < coeffs_.size()) out[k] += q[i] * coeffs_[k - i];
  SeriesTail tail = tail_;
  if (tail.kind == SeriesTail::Kind::Floor) {
    long vq = min_valuation(q, tail.floor.p);
    if (vq < 0) tail.floor.offset -= vq;
  }
  return TruncPowerSeries(std::move(out), tail);
}

TruncPowerSeries TruncPowerSeries::derivative() const {
  if (!is_polynomial()) throw UsageError("derivative is only taken of polynomials");
  std::vector<ExactRat> v;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) v.push_back(coeffs_[k] * ExactRat(static_cast<long>(k)));
  return TruncPowerSeries(std::move(v));
}

ExactRat TruncPowerSeries::evaluate(const ExactRat& x) const {
  if (!is_polynomial()) throw UsageError("evaluate is only defined for polynomials");
  ExactRat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

bool operator==(const TruncPowerSeries& a, const TruncPowerSeries& b) {
  std::size_t n = std::max(a.order(), b.order());
  for (std::size_t k = 0; k < n; ++k) {
    ExactRat ca = k < a.order() ? a.coeffs_[k] : ExactRat(0);
    ExactRat cb = k < b.order() ? b.coeffs_[k] : ExactRat(0);
    if (ca != cb) return false;
  }
  return a.tail_.kind == b.tail_.kind;
}

MahlerCoeffs::MahlerCoeffs(std::vector<ExactRat> coeffs, SeriesTail tail)
    : coeffs_(std::move(coeffs)), tail_(std::move(tail)) {}

// ---------------------------------------------------------------------------
// Stirling numbers
// ---------------------------------------------------------------------------

StirlingTable::StirlingTable(std::size_t k_max, std::size_t j_max)
    : k_max_(k_max), j_max_(j_max), cells_((k_max + 1) * (j_max + 1)) {
  auto at = [&](std::size_t k, std::size_t j) -> BigInt& { return cells_[k * (j_max_ + 1) + j]; };
  at(0, 0) = 1;
  for (std::size_t k = 0; k < k_max_; ++k) {
    for (std::size_t j = 0; j <= j_max_; ++j) {
      BigInt v = -BigInt(static_cast<unsigned long>(k)) * at(k, j);
      if (j > 0) v += at(k, j - 1);
      at(k + 1, j) = v;
    }
  }
}

const BigInt& StirlingTable::operator()(std::size_t k, std::size_t j) const {
  if (k > k_max_ || j > j_max_) throw UsageError("Stirling index outside the table");
  return cells_[k * (j_max_ + 1) + j];
}

BigInt stirling1(std::size_t k, std::size_t j) {
  if (j > k) return 0;
  return StirlingTable(k, j)(k, j);
}

// ---------------------------------------------------------------------------
// Transform and evaluation
// ---------------------------------------------------------------------------

MahlerCoeffs mahler_transform(const TruncPowerSeries& g) {
  std::vector<ExactRat> c(g.coeffs());
  for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
  return MahlerCoeffs(std::move(c), g.tail());
}

ExactRat mahler_eval_exact(const MahlerCoeffs& m, const ExactRat& x) {
  if (!m.is_finite()) throw UsageError("mahler_eval_exact needs a finite Mahler series");
  ExactRat acc = 0;
  ExactRat basis = 1;
  for (std::size_t k = 0; k < m.size(); ++k) {
    acc += m.coeffs()[k] * basis;
    basis *= x - ExactRat(static_cast<long>(k));
  }
  return acc;
}

std::size_t mahler_cutoff(const SeriesTail& tail, long p, long N) {
  switch (tail.kind) {
    case SeriesTail::Kind::Zero:
      return 0;
    case SeriesTail::Kind::Unknown:
      throw TailNotCertified("series carries no coefficient floor");
    case SeriesTail::Kind::Floor:
      break;
  }
  // (x)_k = k! binom(x, k) with binom(x, k) in Z_p.
  const CoefficientFloor& f = tail.floor;
  LinearLogModel model{ExactRat(1, p - 1) - f.rate, ExactRat(f.offset + 1), 1};
  return certified_cutoff(p, N, [&](long k) { return f.at(k) + factorial_valuation(k, p); }, model);
}

std::size_t taylor_cutoff(const SeriesTail& tail, std::size_t j, long p, long N) {
  switch (tail.kind) {
    case SeriesTail::Kind::Zero:
      return 0;
    case SeriesTail::Kind::Unknown:
      throw TailNotCertified("series carries no coefficient floor");
    case SeriesTail::Kind::Floor:
      break;
  }
  if (j == 0) return 1;  // s(k, 0) = 0 for k >= 1
  const CoefficientFloor& f = tail.floor;
  const long jj = static_cast<long>(j);
  LinearLogModel model{ExactRat(1, p - 1) - f.rate, ExactRat(f.offset) + ExactRat(1, p - 1) + 1, jj};
  return certified_cutoff(
      p, N,
      [&](long k) {
        long s = stirling_floor(k, jj, p);
        return s >= kNoTerm ? kNoTerm : f.at(k) + s;
      },
      model);
}

MahlerValue mahler_eval(const MahlerCoeffs& m, const PadicApprox& x, long N) {
  const long p = x.p();
  if (x.prec() < N)
    throw InsufficientPrecision("argument known to p^" + std::to_string(x.prec()) + ", need p^" + std::to_string(N));
  const BigInt& r = x.rep();
  // (r)_k vanishes for k > r, so a non-negative integer argument never needs more than r + 1 terms.
  std::size_t finite_terms = r.fits_ulong_p() ? static_cast<std::size_t>(std::min<unsigned long>(r.get_ui() + 1, ~0UL >> 1))
                                              : ~std::size_t(0) >> 1;
  std::size_t terms = 0;
  bool stabilized = false;
  switch (m.tail().kind) {
    case SeriesTail::Kind::Zero:
      terms = std::min(m.size(), finite_terms);
      break;
    case SeriesTail::Kind::Floor: {
      terms = std::min(mahler_cutoff(m.tail(), p, N), finite_terms);
      require_table(terms, m.size(), "mahler_eval");
      break;
    }
    case SeriesTail::Kind::Unknown: {
      if (finite_terms <= m.size()) {
        terms = finite_terms;
        break;
      }
      std::vector<long> vals;
      BigInt basis = 1;
      for (std::size_t k = 0; k < m.size(); ++k) {
        ExactRat term = m.coeffs()[k] * ExactRat(basis);
        vals.push_back(valuation(term, p));
        basis *= r - static_cast<unsigned long>(k);
      }
      terms = stabilization_index(vals, p, N);
      stabilized = true;
      break;
    }
  }
  ExactRat acc = 0;
  BigInt basis = 1;
  for (std::size_t k = 0; k < terms; ++k) {
    acc += m.coeffs()[k] * ExactRat(basis);
    basis *= r - static_cast<unsigned long>(k);
  }
  return {PadicNumber(p, acc, N), terms, stabilized};
}

std::vector<ExactRat> forward_difference(std::span<const ExactRat> values) {
  std::vector<ExactRat> out;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) out.push_back(values[i + 1] - values[i]);
  return out;
}

MahlerCoeffs forward_difference(const MahlerCoeffs& m) {
  std::vector<ExactRat> c;
  for (std::size_t k = 1; k < m.size(); ++k) c.push_back(m.coeffs()[k] * ExactRat(static_cast<long>(k)));
  SeriesTail tail = m.tail();
  if (tail.kind == SeriesTail::Kind::Floor) {
    // k c_k at index k-1: floor(k) >= floor(k-1) - ceil(rate).
    BigInt up;
    mpz_cdiv_q(up.get_mpz_t(), tail.floor.rate.get_num_mpz_t(), tail.floor.rate.get_den_mpz_t());
    tail.floor.offset += up.get_si();
  }
  return MahlerCoeffs(std::move(c), tail);
}

TruncPowerSeries inverse_transform(std::span<const ExactRat> values, std::size_t K) {
  if (values.size() < K)
    throw UsageError("inverse_transform: need " + std::to_string(K) + " values, got " + std::to_string(values.size()));
  std::vector<ExactRat> inv_fact(K + 1);
  BigInt f = 1;
  for (std::size_t i = 0; i <= K; ++i) {
    if (i > 0) f *= static_cast<unsigned long>(i);
    inv_fact[i] = ExactRat(BigInt(1), f);
  }
  // g = e^x * sum values[n] (-1)^n x^n / n!
  std::vector<ExactRat> out(K, ExactRat(0));
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t n = 0; n <= k; ++n) {
      ExactRat term = values[n] * inv_fact[n] * inv_fact[k - n];
      if (n % 2) out[k] -= term;
      else out[k] += term;
    }
  }
  return TruncPowerSeries(std::move(out));
}

// ---------------------------------------------------------------------------
// The D-functional and Taylor coefficients
// ---------------------------------------------------------------------------

ExactRat dcoef_exact(std::size_t s, const TruncPowerSeries& polynomial) {
  if (!polynomial.is_polynomial()) throw UsageError("dcoef_exact needs a polynomial");
  const std::size_t K = polynomial.order();
  if (K == 0) return 0;
  StirlingTable st(K - 1, s);
  ExactRat acc = 0;
  for (std::size_t k = s; k < K; ++k) {
    ExactRat term = polynomial.coeffs()[k] * ExactRat(st(k, s));
    if ((s + k) % 2) acc -= term;
    else acc += term;
  }
  return acc;
}

namespace {

// Terms to keep for sums of the form sum_k c_k s(k, j) over a table.
std::size_t taylor_terms(const SeriesTail& tail, std::span<const ExactRat> coeffs, std::size_t j, long p, long N,
                         const char* what) {
  switch (tail.kind) {
    case SeriesTail::Kind::Zero:
      return coeffs.size();
    case SeriesTail::Kind::Floor: {
      std::size_t K = taylor_cutoff(tail, j, p, N);
      require_table(K, coeffs.size(), what);
      return K;
    }
    case SeriesTail::Kind::Unknown: {
      StirlingTable st(coeffs.size() == 0 ? 0 : coeffs.size() - 1, j);
      std::vector<long> vals;
      for (std::size_t k = 0; k < coeffs.size(); ++k)
        vals.push_back(valuation(ExactRat(coeffs[k] * ExactRat(st(k, j))), p));
      return stabilization_index(vals, p, N);
    }
  }
  return 0;
}

}  // namespace

PadicNumber dcoef(std::size_t s, const TruncPowerSeries& g, long p, long N) {
  std::size_t K = taylor_terms(g.tail(), g.coeffs(), s, p, N, "dcoef");
  if (K == 0) return PadicNumber::zero(p, N);
  StirlingTable st(K - 1, s);
  ExactRat acc = 0;
  for (std::size_t k = s; k < K; ++k) {
    ExactRat term = g.coeffs()[k] * ExactRat(st(k, s));
    if ((s + k) % 2) acc -= term;
    else acc += term;
  }
  return PadicNumber(p, acc, N);
}

std::vector<ExactRat> taylor_from_mahler_exact(const MahlerCoeffs& m, std::size_t s_max) {
  if (!m.is_finite()) throw UsageError("taylor_from_mahler_exact needs a finite Mahler series");
  std::vector<ExactRat> t(s_max + 1, ExactRat(0));
  if (m.size() == 0) return t;
  StirlingTable st(m.size() - 1, s_max);
  for (std::size_t k = 0; k < m.size(); ++k)
    for (std::size_t j = 0; j <= std::min(k, s_max); ++j) t[j] += m.coeffs()[k] * ExactRat(st(k, j));
  return t;
}

std::vector<PadicNumber> taylor_from_mahler(const MahlerCoeffs& m, std::size_t s_max, long p, long N) {
  std::vector<std::size_t> terms(s_max + 1);
  std::size_t K = 0;
  for (std::size_t j = 0; j <= s_max; ++j) {
    terms[j] = taylor_terms(m.tail(), m.coeffs(), j, p, N, "taylor_from_mahler");
    K = std::max(K, terms[j]);
  }
  std::vector<PadicNumber> out;
  StirlingTable st(K == 0 ? 0 : K - 1, s_max);
  for (std::size_t j = 0; j <= s_max; ++j) {
    ExactRat acc = 0;
    for (std::size_t k = j; k < terms[j]; ++k) acc += m.coeffs()[k] * ExactRat(st(k, j));
    out.emplace_back(p, acc, N);
  }
  return out;
}

}  // namespace padic
