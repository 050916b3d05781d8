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

#ifndef FSRDP_NUMERIC_H_
#define FSRDP_NUMERIC_H_

#include <cmath>
#include <cstddef>
#include <vector>

namespace fsrdp {

inline bool IsInteger(double x) { return std::isfinite(x) && x == std::floor(x); }

inline double LogExpm1Stable(double x) {
  if (x > 36.0) return x + std::log1p(-std::exp(-x));
  return std::log(std::expm1(x));
}

inline double LogBinomialCoefficient(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// log of the falling factorial n (n-1) ... (n-l+1) for integer n >= l >= 0.
inline double LogFallingFactorial(int n, int l) {
  return std::lgamma(n + 1.0) - std::lgamma(n - l + 1.0);
}

inline double LogFactorial(int n) { return std::lgamma(n + 1.0); }

// Deterministic pairwise (tree) summation; independent of any evaluation
// order the caller may have used to produce the addends.
double PairwiseSum(const std::vector<double>& values);

}  // namespace fsrdp

#endif  // FSRDP_NUMERIC_H_
