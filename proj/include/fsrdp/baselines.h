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

#ifndef FSRDP_BASELINES_H_
#define FSRDP_BASELINES_H_

namespace fsrdp {

// One step of Poisson-subsampled DP-SGD under replace-one adjacency,
//
//   (1/(alpha-1)) log [ 1 + q^2 alpha(alpha-1)(e^{1/sigma^2} - e^{-1/sigma^2})
//                         + sum_{k=3}^{m-1} q^k/k! F~_{alpha,2sigma,k}
//                         + E~_{alpha,2sigma,m}(q) ].
//
// The replace-one mean shifts are half the fixed-size ones, which turns into
// the distinct second-order coefficient and a doubled sigma inside the
// higher-order machinery.
double PoissonReplaceOneStep(double alpha, double sigma, double q, int m);

// General-purpose subsampled-RDP upper bound specialized to the Gaussian
// mechanism with per-order base cost eps(j) = 2j/sigma^2.  Integer
// alpha >= 2 evaluates
//
//   K(alpha) = log [ 1 + 2 q^2 alpha(alpha-1)(e^{eps(2)} - 1)
//                      + sum_{j=3}^{alpha} (2 q^j / j!) prod_{l<j}(alpha-l) e^{(j-1) eps(j)} ]
//
// and returns K(alpha)/(alpha-1); non-integer alpha >= 2 interpolates K
// convexly between the neighboring integers, and alpha in (1,2) falls back
// to the alpha = 2 value.
double WangUpperStep(double alpha, double sigma, double q);

// Matching general-purpose lower bound, integer alpha >= 2 only:
//
//   (alpha/(alpha-1)) log(1-q)
//   + (1/(alpha-1)) log [ 1 + alpha q/(1-q)
//                           + sum_{j=2}^{alpha} prod_{l<j}(alpha-l)/j! (q/(1-q))^j e^{(j-1) eps(j)} ].
double WangLowerStep(int alpha, double sigma, double q);

}  // namespace fsrdp

#endif  // FSRDP_BASELINES_H_
