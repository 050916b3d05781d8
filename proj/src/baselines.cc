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

#include "fsrdp/baselines.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fsrdp/fswor.h"
#include "fsrdp/log_space.h"
#include "fsrdp/numeric.h"

namespace fsrdp {
namespace {

void CheckArgs(double alpha, double sigma, double q) {
  if (!(alpha > 1.0)) throw std::domain_error("alpha must be > 1");
  if (!(sigma > 0.0)) throw std::domain_error("sigma must be positive");
  if (!(q >= 0.0) || q >= 1.0) throw std::domain_error("q must lie in [0, 1)");
}

// K(alpha) for integer alpha >= 2 (log of the bracket).
double WangLogBracket(int alpha, double sigma, double q) {
  const double log_q = std::log(q);
  const double inv_sigma2 = 1.0 / (sigma * sigma);
  std::vector<double> terms;
  terms.reserve(alpha + 1);
  terms.push_back(0.0);
  terms.push_back(std::log(2.0) + 2.0 * log_q + std::log(static_cast<double>(alpha)) +
                  std::log(alpha - 1.0) + LogExpm1Stable(4.0 * inv_sigma2));
  // Empty sum at alpha = 2.
  for (int j = 3; j <= alpha; ++j) {
    terms.push_back(std::log(2.0) + j * log_q + LogBinomialCoefficient(alpha, j) +
                    (j - 1.0) * 2.0 * j * inv_sigma2);
  }
  return LogSumExp(terms);
}

}  // namespace

double PoissonReplaceOneStep(double alpha, double sigma, double q, int m) {
  CheckArgs(alpha, sigma, q);
  if (m < 3) throw std::domain_error("taylor order m must be >= 3");
  if (q == 0.0) return 0.0;
  const double log_coeff = std::log(2.0 * std::sinh(1.0 / (sigma * sigma)));
  const double log_bracket = LogReplaceOneBracket(alpha, 2.0 * sigma, q, m, log_coeff);
  return std::max(0.0, log_bracket) / (alpha - 1.0);
}

double WangUpperStep(double alpha, double sigma, double q) {
  CheckArgs(alpha, sigma, q);
  if (q == 0.0) return 0.0;
  if (alpha < 2.0) return WangLogBracket(2, sigma, q);  // epsilon'(2) = K(2)/(2-1)
  if (IsInteger(alpha)) {
    return WangLogBracket(static_cast<int>(alpha), sigma, q) / (alpha - 1.0);
  }
  const int lo = static_cast<int>(std::floor(alpha));
  const double frac = alpha - lo;
  return ((1.0 - frac) * WangLogBracket(lo, sigma, q) +
          frac * WangLogBracket(lo + 1, sigma, q)) /
         (alpha - 1.0);
}

double WangLowerStep(int alpha, double sigma, double q) {
  CheckArgs(alpha, sigma, q);
  if (alpha < 2) throw std::domain_error("WangLowerStep: alpha must be an integer >= 2");
  if (q == 0.0) return 0.0;
  // (1-q)^alpha times the bracketed sum telescopes into the binomial form
  //   sum_{j=0}^{alpha} C(alpha,j) q^j (1-q)^{alpha-j} e^{2 j(j-1)/sigma^2},
  // whose excess over 1 accumulates without the cancellation the two-term
  // shape suffers at small alpha.
  const double inv_sigma2 = 1.0 / (sigma * sigma);
  double excess = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= alpha; ++j) {
    excess += binom * std::pow(q, j) * std::pow(1.0 - q, alpha - j) *
              std::expm1(2.0 * j * (j - 1) * inv_sigma2);
    binom = binom * (alpha - j) / (j + 1);
  }
  return std::log1p(excess) / (alpha - 1.0);
}

}  // namespace fsrdp
