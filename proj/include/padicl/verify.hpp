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

// One-shot verification of the identities behind the library, for a fixed
// prime and precision.

#ifndef PADICL_VERIFY_HPP
#define PADICL_VERIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "padicl/json.hpp"

namespace padic {

struct IdentityResult {
  std::string id;
  std::string statement;
  bool pass = false;
  /// Precision to which every sub-check was confirmed; empty for exact equalities.
  std::optional<long> guaranteed_prec;
  std::string detail;
  double elapsed_ms = 0;
};

struct VerifyReport {
  long p = 0;
  long N = 0;
  unsigned long seed = 0;
  std::vector<IdentityResult> identities;

  bool all_pass() const;
};

struct VerifyOptions {
  long p = 7;
  long N = 6;
  unsigned long seed = 1;
  std::vector<std::string> only;  ///< identity ids to run; empty runs all
};

/// Identity ids in report order.
const std::vector<std::string>& identity_ids();

VerifyReport verify_suite(const VerifyOptions& options);

/// Deterministic payload; elapsed times go to a separate "meta" block when `timing` is set.
Json to_json(const VerifyReport& report, bool timing = false);

}  // namespace padic

#endif  // PADICL_VERIFY_HPP
