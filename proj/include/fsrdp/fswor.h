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

#ifndef FSRDP_FSWOR_H_
#define FSRDP_FSWOR_H_

#include <functional>
#include <string>

#include "fsrdp/moments.h"
#include "fsrdp/types.h"

namespace fsrdp {

// Out-of-band diagnostics for a single step evaluation.
struct StepStatus {
  // The assembled log argument came out non-positive (pure rounding artifact;
  // mathematically the bracket is >= 1) and was clamped so that epsilon = 0.
  bool bracket_clamped = false;
};

// log of the order-m Taylor upper bound on
//
//   H_{alpha,sigma}(q) = E_{x ~ N(0, v)} [ (q dN(1,v)/dN(0,v)(x) + 1 - q)^alpha ],
//   v = sigma^2/4,
//
// the moment whose log, divided by alpha-1, is the one-step add/remove RDP
// bound.  The Taylor coefficients use M_{sigma,k}; the integral remainder is
// replaced by its computable bound, which splits on the sign of alpha - m:
// for alpha - m > 0 a ceil(alpha)-indexed binomial sum over the absolute
// moment bounds, otherwise a single (1-q)^{alpha-m}-weighted term.  For
// integer alpha and m >= alpha + 1 the remainder carries a factor
// |alpha - alpha| = 0 and the bound is exact.
//
// Requires alpha > 1, sigma > 0, 0 <= q < 1, m >= 3.
double LogHUpper(double alpha, double sigma, double q, int m, StepStatus* status = nullptr);

// exp(LogHUpper); saturates to +inf past double range.  Always >= 1.
Saturating HUpper(double alpha, double sigma, double q, int m);

// One step of FSwoR DP-SGD under add/remove adjacency:
// (1/(alpha-1)) log H~_{alpha,sigma}(q).  Non-negative.
double StepAddRemove(double alpha, double sigma, double q, int m, StepStatus* status = nullptr);

// One step of FSwoR DP-SGD under replace-one adjacency,
//
//   (1/(alpha-1)) log [ 1 + q^2 alpha(alpha-1)(e^{4/sigma^2} - e^{2/sigma^2})
//                         + sum_{k=3}^{m-1} q^k/k! F~_{alpha,sigma,k}
//                         + E~_{alpha,sigma,m}(q) ],
//
// where F~ bounds the k-th Taylor coefficient of the two-mixture moment and
// E~ bounds its integral remainder.  The k-sum is empty for m = 3.
double StepReplaceOne(double alpha, double sigma, double q, int m, StepStatus* status = nullptr);

// Coefficient bound F~_{alpha,sigma,k} (log domain) and remainder bound
// E~_{alpha,sigma,m}(q) (log domain); exposed for the Poisson replace-one
// variant, which reuses them at doubled sigma.
double LogFTilde(double alpha, double sigma, int k);
double LogETilde(double alpha, double sigma, int m, double q);

// log of the replace-one bracketed sum given the (log of the) second-order
// coefficient and the sigma feeding the k >= 3 and remainder machinery.
double LogReplaceOneBracket(double alpha, double tail_sigma, double q, int m,
                            double log_second_order_coeff);

// T-step composition over the worst-case chain rule: for each grid alpha,
// epsilon(alpha) = sum_t step(alpha, sigma_t, q, m), with the step picked by
// config.adjacency.  A constant sigma schedule short-circuits to
// T * step; general schedules memoize per distinct sigma and combine with
// deterministic pairwise summation.
RdpCurve Compose(const AccountantConfig& config);

// Same composition driver for an arbitrary per-step bound.
RdpCurve ComposeSteps(const AccountantConfig& config, const std::string& method,
                      const std::function<double(double alpha, double sigma)>& step);

}  // namespace fsrdp

#endif  // FSRDP_FSWOR_H_
