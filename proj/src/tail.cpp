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

#include "padicl/tail.hpp"

#include <algorithm>
#include <string>

namespace padic {

namespace {

BigInt ceil_rat(const ExactRat& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt floor_rat(const ExactRat& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace

long CoefficientFloor::at(long k) const {
  return -floor_rat(rate * ExactRat(k)).get_si() - offset;
}

LinearLogModel factorial_model(long p, long shift) {
  // v_p(m!) = (m - s_p(m))/(p-1) and s_p(m) <= (p-1)(floor(log_p m) + 1).
  return {ExactRat(1, p - 1), ExactRat(shift, p - 1) + 1, 1};
}

std::size_t certified_cutoff(long p, long target, const std::function<long(long)>& exact_floor,
                             const LinearLogModel& model, long first) {
  if (model.slope <= 0) throw TailNotCertified("term valuations have no certified growth");
  auto model_at = [&](const BigInt& k, long e) -> ExactRat {
    return ExactRat(model.slope * ExactRat(k)) - model.intercept - ExactRat(model.log_weight * e);
  };
  // Band e covers [p^e, p^(e+1)); the model increases inside a band and
  // drops by log_weight at each band start.
  BigInt start = 1;
  long e = 0;
  while (true) {
    BigInt next = start * p;
    bool start_ok = model_at(start, e) >= target;
    bool grows = ExactRat(model.slope * ExactRat(next - start)) >= model.log_weight;
    if (start_ok && grows) break;
    start = next;
    ++e;
    if (e > 200) throw TailNotCertified("certified cutoff search did not terminate");
  }
  // From `start` on every k satisfies the model. Look one band back for an
  // earlier entry point.
  BigInt k_model = start;
  if (e > 0) {
    BigInt prev_start = start / p;
    ExactRat need = ExactRat(target) + model.intercept + ExactRat(model.log_weight * (e - 1));
    BigInt k_e = ceil_rat(need / model.slope);
    if (k_e < prev_start) k_e = prev_start;
    if (k_e < start) k_model = k_e;
  }
  if (!k_model.fits_slong_p()) throw TailNotCertified("certified cutoff exceeds the index range");
  long k = std::max(k_model.get_si(), first);
  while (k > first && exact_floor(k - 1) >= target) --k;
  return static_cast<std::size_t>(k);
}

std::size_t stabilization_index(std::span<const long> term_valuations, long p, long target) {
  const std::size_t window = static_cast<std::size_t>(2 * p);
  std::size_t run = 0;
  for (std::size_t i = 0; i < term_valuations.size(); ++i) {
    run = term_valuations[i] >= target ? run + 1 : 0;
    if (run >= window) {
      std::size_t keep = i + 1 + static_cast<std::size_t>(p);
      if (keep > term_valuations.size())
        throw TailNotCertified("stabilization margin runs past the coefficient table");
      return keep;
    }
  }
  throw TailNotCertified("partial sums did not stabilize within " + std::to_string(term_valuations.size()) + " terms");
}

}  // namespace padic
