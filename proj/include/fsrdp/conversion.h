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

#ifndef FSRDP_CONVERSION_H_
#define FSRDP_CONVERSION_H_

#include <string>

#include "fsrdp/types.h"

namespace fsrdp {

enum class ConversionVariant { kClassic, kImproved };

std::string ToString(ConversionVariant variant);

// An (epsilon, delta) guarantee and the Renyi order that realized it.
struct DpGuarantee {
  double epsilon = 0.0;
  double delta = 0.0;
  double alpha_star = 0.0;
  ConversionVariant variant = ConversionVariant::kClassic;
};

// Exhaustive grid minimization of the RDP-to-DP conversion:
//   classic:  eps = min_alpha [ eps'(alpha) + log(1/delta)/(alpha-1) ]
//   improved: eps = min_alpha [ eps'(alpha) + log((alpha-1)/alpha)
//                                 - (log delta + log alpha)/(alpha-1) ]
// The improved form is pointwise tighter.  Ties break toward the smaller
// alpha; +inf curve points are skipped; an all-infinite curve converts to
// epsilon = +inf.  Results clamp at zero.
DpGuarantee RdpToDp(const RdpCurve& curve, double delta, ConversionVariant variant);

// Leading-order closed form 2 sqrt(log(1/delta) R) for a linear RDP profile
// eps'(alpha) ~= alpha R.  An approximation for comparisons only, never a
// reported guarantee.
double EpsApprox(double r, double delta);

}  // namespace fsrdp

#endif  // FSRDP_CONVERSION_H_
