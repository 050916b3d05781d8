//
// Copyright 2026 The FSRDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef FSRDP_SELFCHECK_H_
#define FSRDP_SELFCHECK_H_

#include <cstdint>
#include <string>
#include <vector>

namespace fsrdp {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// End-to-end consistency battery: oracle enumerations, integer-order
// exactness, bound orderings against the general-purpose baselines, the
// with-replacement sandwich, variance algebra, Monte-Carlo soundness, and
// the conversion pipeline.  The seed feeds the Monte-Carlo checks only.
std::vector<CheckResult> RunSelfChecks(std::uint64_t seed);

}  // namespace fsrdp

#endif  // FSRDP_SELFCHECK_H_
