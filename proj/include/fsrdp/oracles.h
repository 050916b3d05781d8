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

#ifndef FSRDP_ORACLES_H_
#define FSRDP_ORACLES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "fsrdp/variance.h"

namespace fsrdp {

// Exact value of H_{alpha,sigma}(q) for integer alpha: the binomial
// expansion sum_{k=0}^{alpha} C(alpha,k) q^k (1-q)^{alpha-k} e^{2k(k-1)/sigma^2}.
// Independent of the Taylor/remainder path; accepts the full q in [0, 1].
double ExactHInteger(int alpha, double sigma, double q);

// log H by the same route, but accumulated as log1p(sum pmf_k expm1(.)) so
// the tiny-epsilon regime keeps full relative precision.  The reference for
// epsilon-level comparisons.
double ExactLogHInteger(int alpha, double sigma, double q);

// A finite mixture of unit-variance-scaled Gaussians on the line: weights
// must sum to one, means are in the re-scaled coordinates where the worst
// case shift of the accountants is 1 and the noise scale is sigma/2.
struct MixtureSpec {
  std::vector<double> weights;
  std::vector<double> means;
};

// Numerator mixture of the add/remove form: q N(1, .) + (1-q) N(0, .),
// integrated against the pure reference N(0, .).
MixtureSpec AddRemoveMixture(double q);
MixtureSpec PureReference();
// Worst-case replace-one pair: anti-parallel means +-1/2 (the largest
// anti-parallel shifts compatible with |mu| <= 1, |mu'| <= 1, |mu-mu'| <= 1).
MixtureSpec ReplaceOneNumerator(double q);
MixtureSpec ReplaceOneDenominator(double q);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

// Monte-Carlo estimate of the mixture moment
//
//   E_{x ~ N(0, sigma_eff^2)} [ (Q(x)/R(x))^alpha (P(x)/R(x))^{1-alpha} ]
//     = integral Q^alpha P^{1-alpha} dx,
//
// where Q is the numerator mixture, P the denominator mixture, and R the
// N(0, sigma_eff^2) sampling reference.  exp((alpha-1) * step bound) of the
// matching accountant must dominate this quantity.  Draws are Box-Muller
// normals from a counter-based generator in fixed-size blocks with
// deterministic per-block seeds, so the estimate is reproducible bit for bit
// and independent of how blocks would be scheduled; each draw is paired
// antithetically (x and -x evaluated together).  `samples` counts antithetic
// pairs and must be at least 10^4.
McEstimate McMixtureRenyi(double alpha, const MixtureSpec& numerator,
                          const MixtureSpec& denominator, double sigma_eff,
                          std::int64_t samples, std::uint64_t seed);

// Outcome of an exact distribution-equality enumeration.
struct DecompositionReport {
  bool exact_match = false;
  std::int64_t outcomes = 0;  // distinct minibatches / index tuples checked
  std::string detail;         // first mismatch, if any
};

// Enumerates the Bernoulli(q)-plus-swap construction that rebuilds uniform
// fixed-size sampling without replacement from sampling over the reduced
// dataset, in exact integer arithmetic over a common denominator, and
// checks the induced distribution is exactly uniform over size-|B| subsets.
DecompositionReport ValidateFsworDecomposition(int dataset, int batch);

// Enumerates the (iid base draws, binomial count, random permutation)
// construction for sampling with replacement and checks exact uniformity
// over index tuples {0..|D|-1}^{|B|}.
DecompositionReport ValidateFswrDecomposition(int dataset, int batch);

// Full (|B|+1)^alpha nested-sum evaluation of the with-replacement
// lower bound; reference for the truncated recursion.
double BruteFswrLower(int alpha, double sigma, int batch, std::int64_t dataset);

enum class SamplingMode { kPoisson, kFswor, kFswr };

// Exhaustive-enumeration variance of the minibatch mean estimator:
// Bernoulli patterns, size-|B| subsets, or |D|^{|B|} index tuples.
double BruteVariance(const Population& pop, std::int64_t batch, SamplingMode mode);

}  // namespace fsrdp

#endif  // FSRDP_ORACLES_H_
