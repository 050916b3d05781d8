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

#include "fsrdp/log_space.h"

#include <algorithm>
#include <stdexcept>

namespace fsrdp {

SignedLog SignedLog::FromValue(double v) {
  if (v == 0.0) return Zero();
  if (std::isnan(v)) throw std::domain_error("SignedLog::FromValue: NaN");
  return {v > 0 ? 1 : -1, std::log(std::fabs(v))};
}

SignedLog SignedLog::Make(int sign, double log_mag) {
  if (sign == 0 || log_mag == kNegInf) return Zero();
  return {sign > 0 ? 1 : -1, log_mag};
}

double SignedLog::ToValue() const {
  if (sign == 0) return 0.0;
  const double mag = std::exp(log_magnitude);  // overflows to +inf
  return sign < 0 ? -mag : mag;
}

SignedLog operator*(const SignedLog& a, const SignedLog& b) {
  if (a.sign == 0 || b.sign == 0) return SignedLog::Zero();
  return {a.sign * b.sign, a.log_magnitude + b.log_magnitude};
}

SignedLog operator-(const SignedLog& a) { return {-a.sign, a.log_magnitude}; }

SignedLog Pow(const SignedLog& a, double p) {
  if (a.sign < 0) throw std::domain_error("Pow: negative base");
  if (a.sign == 0) {
    if (p <= 0) throw std::domain_error("Pow: zero base, non-positive exponent");
    return SignedLog::Zero();
  }
  return {1, p * a.log_magnitude};
}

SignedLog Sqrt(const SignedLog& a) { return Pow(a, 0.5); }

double LogAdd(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

double LogSumExp(const std::vector<double>& xs) {
  double hi = kNegInf;
  std::size_t hi_index = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] > hi) {
      hi = xs[i];
      hi_index = i;
    }
  }
  if (hi == kNegInf) return kNegInf;
  if (hi == kPosInf) return kPosInf;
  // Pull the maximum out exactly; log1p keeps full precision when the
  // remaining mass is tiny (brackets of the form 1 + epsilon).
  double rest = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i != hi_index) rest += std::exp(xs[i] - hi);
  }
  return hi + std::log1p(rest);
}

SignedLog SignedLogSum(std::vector<SignedLog> terms) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const SignedLog& a, const SignedLog& b) {
                     return a.log_magnitude > b.log_magnitude;
                   });
  SignedLog acc = SignedLog::Zero();
  for (const SignedLog& t : terms) {
    if (t.sign == 0) continue;
    if (acc.sign == 0) {
      acc = t;
      continue;
    }
    if (acc.sign == t.sign) {
      acc.log_magnitude = LogAdd(acc.log_magnitude, t.log_magnitude);
      continue;
    }
    if (acc.log_magnitude == t.log_magnitude) {
      acc = SignedLog::Zero();
      continue;
    }
    const bool acc_larger = acc.log_magnitude > t.log_magnitude;
    const double hi = acc_larger ? acc.log_magnitude : t.log_magnitude;
    const double lo = acc_larger ? t.log_magnitude : acc.log_magnitude;
    const double mag = hi + std::log1p(-std::exp(lo - hi));
    acc = SignedLog::Make(acc_larger ? acc.sign : t.sign, mag);
  }
  return acc;
}

}  // namespace fsrdp
