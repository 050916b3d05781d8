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

#ifndef FSRDP_LOG_SPACE_H_
#define FSRDP_LOG_SPACE_H_

#include <cmath>
#include <limits>
#include <vector>

namespace fsrdp {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// log(DBL_MAX); magnitudes with a larger log do not fit in a double.
inline constexpr double kLogDoubleMax = 709.782712893383996;

// A real number held as a sign and the natural log of its magnitude.
// sign == 0 if and only if log_magnitude == -inf.  Accountant formulas
// involve alternating sums whose terms reach e^{2k(k-1)/sigma^2}, far past
// double range, so all moment and bracket assembly happens in this domain.
struct SignedLog {
  int sign = 0;
  double log_magnitude = kNegInf;

  static SignedLog Zero() { return {0, kNegInf}; }
  static SignedLog One() { return {1, 0.0}; }
  static SignedLog FromValue(double v);
  static SignedLog PositiveFromLog(double log_mag) { return {1, log_mag}; }
  static SignedLog Make(int sign, double log_mag);

  bool IsZero() const { return sign == 0; }
  // Magnitude exceeds the largest finite double.
  bool OverflowsDouble() const { return sign != 0 && log_magnitude > kLogDoubleMax; }
  // Exponentiates; overflow saturates to +/-inf.
  double ToValue() const;
};

SignedLog operator*(const SignedLog& a, const SignedLog& b);
SignedLog operator-(const SignedLog& a);

// a^p for a >= 0 and real p (0^p = 0 for p > 0).
SignedLog Pow(const SignedLog& a, double p);
SignedLog Sqrt(const SignedLog& a);

// log(e^a + e^b); tolerates -inf in either slot.
double LogAdd(double a, double b);

// log(sum_i e^{x_i}) over non-negative-weight terms via max shift.
// Returns -inf for an empty list.
double LogSumExp(const std::vector<double>& xs);

// Sum of signed log-domain terms, accumulated in order of decreasing
// magnitude.  Cancellation between near-equal opposite-sign terms yields an
// exact zero.
SignedLog SignedLogSum(std::vector<SignedLog> terms);

}  // namespace fsrdp

#endif  // FSRDP_LOG_SPACE_H_
