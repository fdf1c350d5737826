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

// Morita's p-adic Gamma function.

#ifndef PADICL_GAMMA_HPP
#define PADICL_GAMMA_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "padicl/core.hpp"
#include "padicl/dwork.hpp"

namespace padic {

/// Gamma_p(n) for any integer n, from Gamma_p(0) = 1 and the functional
/// equation. Costs O(|n|).
PadicApprox gamma_morita(long n, long p, long N);

/// Morita partial products prod_{1 <= j < n, p does not divide j} j mod p^N at
/// every multiple of `stride` in [0, p^N]. Built once (in parallel chunks),
/// then read-only.
class GammaTable {
 public:
  GammaTable(long p, long N, std::size_t stride = 1024, unsigned threads = 0);

  long p() const noexcept { return p_; }
  long prec() const noexcept { return N_; }

  /// Gamma_p at the representative of n mod p^N.
  PadicApprox operator()(const BigInt& n) const;

 private:
  long p_;
  long N_;
  std::size_t stride_;
  BigInt modulus_;
  std::vector<BigInt> checkpoints_;
};

enum class GammaRoute { MoritaProduct, MoritaTable, LocalExpansion };
std::string to_string(GammaRoute route);

struct GammaValue {
  PadicApprox value;
  GammaRoute route;
};

/// Largest p^N for which gamma_eval walks the whole period by a Morita product.
inline constexpr long kMoritaPeriodLimit = 10'000'000;

/// Gamma_p(z) mod p^N. Small representatives (of z or -z) use the Morita
/// product directly; otherwise the Morita product if p^N <= kMoritaPeriodLimit
/// and the local expansion above that.
GammaValue gamma_eval(const PadicApprox& z, long N);

/// Gamma_p(-a + p x) = sum_k p^k B_{a+kp} (x)^k.
class LocalExpansion {
 public:
  LocalExpansion(long p, long a, std::vector<ExactRat> coeffs);

  long p() const noexcept { return p_; }
  long a() const noexcept { return a_; }
  std::size_t size() const noexcept { return d_.size(); }
  const std::vector<ExactRat>& coeffs() const noexcept { return d_; }

  /// Terms needed for the j-th Taylor coefficient in x to be exact mod p^N.
  std::size_t cutoff(long N, std::size_t j = 0) const;

  /// Gamma_p(-a + p x) mod p^N for x in Z_p given exactly.
  PadicNumber evaluate(const ExactRat& x, long N) const;

  /// tau_0..tau_{s_max}: Gamma_p(-a + p (x0 + t)) = sum_j tau_j t^j, each mod p^N.
  std::vector<PadicNumber> taylor(const ExactRat& x0, std::size_t s_max, long N) const;

 private:
  long p_;
  long a_;
  std::vector<ExactRat> d_;
};

/// Coefficients p^k B_{a+kp} for k < K. UsageError if the table is too short.
LocalExpansion local_expansion(long a, const DworkCoeffs& B, std::size_t K);
/// Uses every coefficient the table provides.
LocalExpansion local_expansion(long a, const DworkCoeffs& B);

/// Taylor coefficients of Gamma_p at 0 through the Mahler series of f:
/// t_j = sum_k (-1)^k B_k s(k, j), each known mod p^N.
std::vector<PadicNumber> gamma_taylor_at0(std::size_t s_max, long p, long N);

/// Taylor coefficients c_j of u -> Gamma_p(z + u) at a p-integral rational z,
/// through the local expansion. Each known mod p^N.
std::vector<PadicNumber> gamma_taylor_at(const ExactRat& z, std::size_t s_max, long p, long N);

/// Gamma_p^(s)(0) mod p^N.
PadicNumber gamma_deriv_at0(std::size_t s, long p, long N);
/// Gamma_p^(s)(z) mod p^N.
PadicNumber gamma_deriv_at(const ExactRat& z, std::size_t s, long p, long N);

/// Coefficients of log(t_0 + t_1 x + ...), t_0 a unit; the constant term is
/// log-free and returned as 0. Precision follows the operations.
std::vector<PadicNumber> formal_log(const std::vector<PadicNumber>& t);

/// (log Gamma_p)^(s)(0) mod p^N, s >= 1.
PadicNumber loggamma_deriv_at0(std::size_t s, long p, long N);
/// (log Gamma_p)^(s)(z) mod p^N, s >= 1.
PadicNumber loggamma_deriv_at(const ExactRat& z, std::size_t s, long p, long N);

enum class Stencil {
  Forward,  ///< sum_i (-1)^(s-i) binom(s,i) F(z + i h) / h^s
  Central,  ///< sum_i (-1)^i binom(s,i) F(z + (s-2i) h) / (2h)^s
};

using PointEval = std::function<PadicApprox(const PadicApprox&)>;

/// s-th difference quotient of `eval` at z with step h = p^m. The value is
/// known mod p^(M - ms) where M is the precision of the sampled values.
PadicNumber finite_difference_derivative(const PointEval& eval, const PadicApprox& z, long s, long m,
                                         Stencil stencil = Stencil::Forward);

struct OracleDerivative {
  PadicNumber value;       ///< quotient at step p^m
  long certified_prec = 0;  ///< agreement with the step p^(m+1) quotient, capped by precision
};

OracleDerivative derivative_oracle(const PointEval& eval, const PadicApprox& z, long s, long m,
                                   Stencil stencil = Stencil::Forward);

}  // namespace padic

#endif  // PADICL_GAMMA_HPP
