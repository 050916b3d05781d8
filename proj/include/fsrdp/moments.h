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

#ifndef FSRDP_MOMENTS_H_
#define FSRDP_MOMENTS_H_

#include "fsrdp/log_space.h"

namespace fsrdp {

// A value that may have saturated to +/-inf because the true magnitude does
// not fit in a double.  Saturation to +inf is sound wherever the value feeds
// an upper bound.
struct Saturating {
  double value = 0.0;
  bool saturated = false;
};

// k-th central moment of the shifted-Gaussian likelihood ratio,
//
//   M_{sigma,k} = E_{x ~ N(0, sigma^2/4)} [ (dN(1, sigma^2/4)/dN(0, sigma^2/4)(x) - 1)^k ]
//               = sum_{l=2}^{k} (-1)^{k-l} C(k,l) (e^{2 l(l-1)/sigma^2} - 1),
//
// the building block of every Taylor coefficient and remainder bound in the
// accountants.  The alternating sum is assembled in signed log space,
// largest-magnitude term first; terms reach e^{2k(k-1)/sigma^2} and cancel
// almost completely when 4/sigma^2 is small.  M_{sigma,0} = 1, M_{sigma,1} = 0,
// and even-order moments are non-negative.
//
// Results are memoized per (sigma bit pattern, k); safe to call concurrently.
SignedLog RatioMomentLog(double sigma, int k);

// Computable upper bound on the k-th absolute moment
// E |dN(1,.)/dN(0,.) - 1|^j: the even moment itself, or the Cauchy-Schwarz
// interpolant sqrt(M_{sigma,j-1} M_{sigma,j+1}) for odd j.  Requires j >= 1.
SignedLog AbsMomentBoundLog(double sigma, int j);

// Plain-value wrappers.  Magnitudes beyond double range saturate to +inf
// with the flag set.
Saturating RatioMoment(double sigma, int k);
Saturating AbsMomentBound(double sigma, int j);

// Evaluation count of the underlying (unmemoized) moment kernel; used by
// tests to confirm the cache is effective.
long long RatioMomentKernelEvaluations();

}  // namespace fsrdp

#endif  // FSRDP_MOMENTS_H_
