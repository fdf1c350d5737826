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

// Truncation certificates for infinite p-adic sums.

#ifndef PADICL_TAIL_HPP
#define PADICL_TAIL_HPP

#include <cstddef>
#include <functional>
#include <span>

#include "padicl/core.hpp"

namespace padic {

/// v_p(c_k) >= -floor(rate * k) - offset for every k >= 0, including indices
/// beyond any stored table.
struct CoefficientFloor {
  long p = 3;
  ExactRat rate = 0;
  long offset = 0;

  long at(long k) const;
};

/// bound(k) >= slope * k - intercept - log_weight * floor(log_p k) for k >= 1.
struct LinearLogModel {
  ExactRat slope;
  ExactRat intercept;
  long log_weight = 0;
};

/// Smallest K >= first such that exact_floor(k) >= target for every k >= K.
///
/// exact_floor(k) is a proven lower bound for the valuation of term k and
/// must dominate `model` for k >= 1; the model is what makes "every k" a
/// finite check. Throws TailNotCertified when the model does not grow.
std::size_t certified_cutoff(long p, long target, const std::function<long(long)>& exact_floor,
                             const LinearLogModel& model, long first = 0);

/// Stabilization rule for sums without an a-priori certificate: the first
/// index i such that the window of 2p terms ending at i all have valuation
/// >= target, plus a margin of p further terms. Returns the number of terms
/// to keep. Throws TailNotCertified when the table ends first.
std::size_t stabilization_index(std::span<const long> term_valuations, long p, long target);

/// Lower-bound model for v_p((k - shift)!) (valid for k >= 1).
LinearLogModel factorial_model(long p, long shift = 0);

}  // namespace padic

#endif  // PADICL_TAIL_HPP
