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

#include "fsrdp/numeric.h"

namespace fsrdp {
namespace {

double PairwiseSumRange(const std::vector<double>& values, std::size_t lo, std::size_t hi) {
  const std::size_t n = hi - lo;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += values[i];
    return s;
  }
  const std::size_t mid = lo + n / 2;
  return PairwiseSumRange(values, lo, mid) + PairwiseSumRange(values, mid, hi);
}

}  // namespace

double PairwiseSum(const std::vector<double>& values) {
  return PairwiseSumRange(values, 0, values.size());
}

}  // namespace fsrdp
