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

// Kubota-Leopoldt L-values at integers s >= 2, p-adic zeta values, Volkenborn
// integrals over Z_p^x, Delta_s and the Frobenius entry of the mirror quintic.

#ifndef PADICL_LFUNC_HPP
#define PADICL_LFUNC_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "padicl/core.hpp"

namespace padic {

/// A Z_p-valued Dirichlet character given by its table chi(0..d-1).
/// Values are exact rationals known modulo p^prec (kExactPrec for exact tables).
class DirichletChar {
 public:
  DirichletChar(long modulus, std::vector<ExactRat> values, long prec = kExactPrec, std::string label = "table");

  static DirichletChar trivial();
  /// chi(a) = (D / a), the Kronecker symbol, modulus |D|; D a fundamental discriminant.
  static DirichletChar kronecker(long D);

  long modulus() const noexcept { return d_; }
  long prec() const noexcept { return prec_; }
  const std::string& label() const noexcept { return label_; }
  const std::vector<ExactRat>& values() const noexcept { return values_; }
  const ExactRat& operator()(const BigInt& a) const;
  bool is_trivial() const noexcept { return d_ == 1; }

  /// Throws UsageError unless the table is a Z_p-valued character for p:
  /// p does not divide d, chi vanishes exactly off (Z/d)^x, takes unit values
  /// on it and is multiplicative (modulo p^prec).
  void validate(long p) const;

 private:
  long d_;
  std::vector<ExactRat> values_;
  long prec_;
  std::string label_;
};

bool is_fundamental_discriminant(long D);

enum class VolkenbornKernel {
  Blocked,  ///< binomial expansion over residue blocks; cost independent of the level
  Direct,   ///< term-by-term sum over n < d p^L, chunked across threads
};
std::string to_string(VolkenbornKernel k);

struct VolkenbornOptions {
  VolkenbornKernel kernel = VolkenbornKernel::Blocked;
  long max_level = -1;  ///< largest L tried; default N + 5 (k <= N + 4)
  unsigned threads = 0;
};

/// sum_{0 < n < d p^L, p does not divide n} chi(n) n^(-m) mod p^W.
BigInt volkenborn_level_sum(const DirichletChar& chi, long m, long p, long L, long W,
                            VolkenbornKernel kernel = VolkenbornKernel::Blocked, unsigned threads = 0);

struct VolkenbornResult {
  PadicNumber value;
  long level = 0;  ///< L at which S_L = S_(L+1) mod p^N was observed (k = L - 1)
  VolkenbornKernel kernel = VolkenbornKernel::Blocked;
};

/// integral over Z_p^x of t^(-m): S_L = (1/p^L) sum_{n < p^L, p does not divide n} n^(-m),
/// for L = 1, 2, ... until S_L = S_(L+1) mod p^N. NoStabilization past the cap.
VolkenbornResult volkenborn_unit_power(long m, long p, long N, const VolkenbornOptions& options = {});

/// The chi-twisted integral: S_L = (1/(d p^L)) sum_{n < d p^L, p does not divide n} chi(n) n^(-m).
VolkenbornResult volkenborn_twisted(const DirichletChar& chi, long m, long p, long N,
                                    const VolkenbornOptions& options = {});

/// L_p(s, omega^(1-s)) as the integral of t^(1-s) divided by s - 1.
PadicNumber lp_via_limit(long s, long p, long N, const VolkenbornOptions& options = {});
/// L_p(s, omega^(1-s)) = ((-1)^s / (s-1)!) (log Gamma_p)^(s)(0).
PadicNumber lp_via_gamma(long s, long p, long N);

/// L_p(s, chi omega^(1-s)) = ((-d)^(-s) / (s-1)!) sum_{0 <= a < d} chi(a) (log Gamma_p)^(s)(a/d).
PadicNumber lp_character(long s, const DirichletChar& chi, long p, long N);
/// The same value from the twisted integral of chi(t) t^(1-s), divided by s - 1.
PadicNumber lp_character_via_limit(long s, const DirichletChar& chi, long p, long N,
                                   const VolkenbornOptions& options = {});

enum class LpRoute { Limit, Gamma };

/// zeta_p(s) = p^s / (p^s - 1) L_p(s, omega^(1-s)).
PadicNumber zeta_p(long s, long p, long N, LpRoute route = LpRoute::Limit);

struct DeltaReport {
  long s = 0;
  PadicNumber dcoef_s;  ///< [D^s f]_0
  PadicNumber dcoef_1;  ///< [D f]_0
  PadicNumber delta;    ///< [D^s f]_0 - [D f]_0^s / s!
  long guaranteed_prec = 0;
};

/// Delta_s from the B-table, with working precision raised until the value is
/// known mod p^N.
DeltaReport delta(long s, long p, long N);

struct FrobeniusEntry {
  long p = 0;
  PadicNumber via_delta;  ///< p^3 (24/25) Delta_3
  PadicNumber via_lp;     ///< p^3 (8/25) L_p(3, omega^-2)
  PadicNumber via_zeta;   ///< (p^3 - 1) (8/25) zeta_p(3)
  long delta3_valuation = 0;
  bool agree = false;
  long guaranteed_prec = 0;
};

/// Unsupported for p = 5.
FrobeniusEntry frobenius_entry(long p, long N);

}  // namespace padic

#endif  // PADICL_LFUNC_HPP
