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

#include "fsrdp/fswor.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "fsrdp/numeric.h"

namespace fsrdp {
namespace {

void CheckStepArgs(double alpha, double sigma, double q, int m) {
  if (!(alpha > 1.0)) throw std::domain_error("alpha must be > 1");
  if (!(sigma > 0.0)) throw std::domain_error("sigma must be positive");
  if (!(q >= 0.0) || q >= 1.0) throw std::domain_error("q must lie in [0, 1)");
  if (m < 3) throw std::domain_error("taylor order m must be >= 3");
}

// Signed product prod_{j=0}^{count-1} (alpha - j).
SignedLog LogRisingTail(double alpha, int count) {
  SignedLog prod = SignedLog::One();
  for (int j = 0; j < count; ++j) {
    prod = prod * SignedLog::FromValue(alpha - j);
    if (prod.IsZero()) return prod;
  }
  return prod;
}

// log prod_{j=0}^{count-1} |alpha - j|; -inf if any factor is exactly zero.
double LogAbsFactorProduct(double alpha, int count) {
  double acc = 0.0;
  for (int j = 0; j < count; ++j) {
    const double f = std::fabs(alpha - j);
    if (f == 0.0) return kNegInf;
    acc += std::log(f);
  }
  return acc;
}

// Remainder bound of the order-m Taylor expansion of H (log domain).
double LogHRemainder(double alpha, double sigma, int m, double log_q, double q) {
  const double log_abs_prod = LogAbsFactorProduct(alpha, m);
  if (log_abs_prod == kNegInf) return kNegInf;  // exact truncation
  if (alpha - m > 0.0) {
    const int ceil_alpha = static_cast<int>(std::ceil(alpha));
    std::vector<double> inner;
    inner.reserve(ceil_alpha - m + 2);
    for (int l = 0; l <= ceil_alpha - m; ++l) {
      inner.push_back(l * log_q + LogFallingFactorial(ceil_alpha - m, l) -
                      LogFactorial(m + l) + AbsMomentBoundLog(sigma, m + l).log_magnitude);
    }
    inner.push_back(-LogFactorial(m) + AbsMomentBoundLog(sigma, m).log_magnitude);
    return m * log_q + log_abs_prod + LogSumExp(inner);
  }
  return m * log_q - LogFactorial(m) + (alpha - m) * std::log1p(-q) + log_abs_prod +
         AbsMomentBoundLog(sigma, m).log_magnitude;
}

double ClampLogBracket(double log_bracket, StepStatus* status) {
  if (log_bracket < 0.0) {
    if (status != nullptr) status->bracket_clamped = true;
    return 0.0;
  }
  return log_bracket;
}

}  // namespace

double LogHUpper(double alpha, double sigma, double q, int m, StepStatus* status) {
  CheckStepArgs(alpha, sigma, q, m);
  if (q == 0.0) return 0.0;
  const double log_q = std::log(q);

  std::vector<SignedLog> terms;
  terms.reserve(m + 1);
  terms.push_back(SignedLog::One());
  for (int k = 2; k <= m - 1; ++k) {
    const SignedLog coeff = LogRisingTail(alpha, k);
    if (coeff.IsZero()) continue;
    const SignedLog scale =
        SignedLog::PositiveFromLog(k * log_q - LogFactorial(k));
    terms.push_back(coeff * scale * RatioMomentLog(sigma, k));
  }
  terms.push_back(SignedLog::Make(1, LogHRemainder(alpha, sigma, m, log_q, q)));

  const SignedLog bracket = SignedLogSum(std::move(terms));
  if (bracket.sign <= 0) {
    if (status != nullptr) status->bracket_clamped = true;
    return 0.0;
  }
  return ClampLogBracket(bracket.log_magnitude, status);
}

Saturating HUpper(double alpha, double sigma, double q, int m) {
  const double log_h = LogHUpper(alpha, sigma, q, m);
  if (log_h > kLogDoubleMax) return {kPosInf, true};
  return {std::exp(log_h), false};
}

double StepAddRemove(double alpha, double sigma, double q, int m, StepStatus* status) {
  return LogHUpper(alpha, sigma, q, m, status) / (alpha - 1.0);
}

double LogFTilde(double alpha, double sigma, int k) {
  if (!(alpha > 1.0)) throw std::domain_error("alpha must be > 1");
  if (k < 2) throw std::domain_error("LogFTilde: k must be >= 2");
  const double log_prefactor = std::log(alpha - 1.0) + (k - 1) * std::log(alpha);
  // Difference-power part: the k-th moment of the numerator/denominator
  // ratio gap, bounded by 4 M_k (even k) or 3 sqrt(M_{k-1} M_{k+1}) (odd k).
  const double log_diff_part =
      (k % 2 == 0)
          ? std::log(4.0) + RatioMomentLog(sigma, k).log_magnitude
          : std::log(3.0) + 0.5 * (RatioMomentLog(sigma, k - 1).log_magnitude +
                                   RatioMomentLog(sigma, k + 1).log_magnitude);
  // Cross-term part: binomial sum of |coefficient product - 1| against the
  // shared absolute-moment bound B~_k.
  std::vector<double> cross;
  cross.reserve(k + 1);
  for (int j = 0; j <= k; ++j) {
    double prod = alpha / (alpha - 1.0);
    for (int l = 0; l < j; ++l) prod *= 1.0 - l / alpha;
    for (int l = 0; l < k - j; ++l) prod *= 1.0 + (l - 1.0) / alpha;
    const double dev = std::fabs(prod - 1.0);
    if (dev == 0.0) continue;
    cross.push_back(LogBinomialCoefficient(k, j) + std::log(dev));
  }
  const double log_cross_part = LogSumExp(cross) + AbsMomentBoundLog(sigma, k).log_magnitude;
  return log_prefactor + LogAdd(log_diff_part, log_cross_part);
}

double LogETilde(double alpha, double sigma, int m, double q) {
  if (!(alpha > 1.0)) throw std::domain_error("alpha must be > 1");
  if (m < 3) throw std::domain_error("LogETilde: m must be >= 3");
  if (!(q > 0.0) || q >= 1.0) throw std::domain_error("LogETilde: q must lie in (0, 1)");
  const double log_q = std::log(q);
  const double log_one_minus_q = std::log1p(-q);
  const int ceil_alpha = static_cast<int>(std::ceil(alpha));
  const double log_bm = AbsMomentBoundLog(sigma, m).log_magnitude;

  std::vector<double> outer;
  outer.reserve(m + 1);
  for (int j = 0; j <= m; ++j) {
    const double log_alpha_prod = LogAbsFactorProduct(alpha, j);
    if (log_alpha_prod == kNegInf) continue;
    double log_shift_prod = 0.0;  // prod_{l=0}^{m-j-1} (alpha + l - 1) > 0
    for (int l = 0; l < m - j; ++l) log_shift_prod += std::log(alpha + l - 1.0);

    double log_inner;
    if (alpha - j <= 0.0) {
      log_inner = (alpha - j) * log_one_minus_q + log_bm;
    } else {
      std::vector<double> inner;
      inner.reserve(ceil_alpha - j + 2);
      inner.push_back(log_bm);
      for (int l = 0; l <= ceil_alpha - j; ++l) {
        inner.push_back(l * log_q + LogFallingFactorial(ceil_alpha - j, l) + LogFactorial(m) -
                        LogFactorial(m + l) + AbsMomentBoundLog(sigma, m + l).log_magnitude);
      }
      log_inner = LogSumExp(inner);
    }
    outer.push_back(LogBinomialCoefficient(m, j) + log_alpha_prod + log_shift_prod -
                    (alpha + m - j - 1.0) * log_one_minus_q + log_inner);
  }
  return m * log_q - LogFactorial(m) + LogSumExp(outer);
}

double LogReplaceOneBracket(double alpha, double tail_sigma, double q, int m,
                            double log_second_order_coeff) {
  const double log_q = std::log(q);
  std::vector<double> terms;
  terms.reserve(m + 1);
  terms.push_back(0.0);  // the leading 1
  terms.push_back(2.0 * log_q + std::log(alpha) + std::log(alpha - 1.0) +
                  log_second_order_coeff);
  for (int k = 3; k <= m - 1; ++k) {
    terms.push_back(k * log_q - LogFactorial(k) + LogFTilde(alpha, tail_sigma, k));
  }
  terms.push_back(LogETilde(alpha, tail_sigma, m, q));
  return LogSumExp(terms);
}

double StepReplaceOne(double alpha, double sigma, double q, int m, StepStatus* status) {
  CheckStepArgs(alpha, sigma, q, m);
  if (q == 0.0) return 0.0;
  // e^{4/sigma^2} - e^{2/sigma^2} = e^{2/sigma^2} (e^{2/sigma^2} - 1)
  const double x = 2.0 / (sigma * sigma);
  const double log_coeff = x + LogExpm1Stable(x);
  const double log_bracket = LogReplaceOneBracket(alpha, sigma, q, m, log_coeff);
  return ClampLogBracket(log_bracket, status) / (alpha - 1.0);
}

RdpCurve ComposeSteps(const AccountantConfig& config, const std::string& method,
                      const std::function<double(double, double)>& step) {
  config.Validate();
  const std::size_t steps = config.Steps();

  bool constant_sigma = true;
  for (double s : config.sigmas) {
    if (std::bit_cast<std::uint64_t>(s) != std::bit_cast<std::uint64_t>(config.sigmas.front())) {
      constant_sigma = false;
      break;
    }
  }

  RdpCurve curve;
  curve.method = method;
  std::ostringstream cfg;
  cfg << "B=" << config.spec.batch << " D=" << config.spec.dataset << " T=" << steps
      << " m=" << config.taylor_order;
  curve.config = cfg.str();

  curve.alphas = config.alpha_grid;
  curve.epsilons.reserve(curve.alphas.size());
  for (double alpha : curve.alphas) {
    double eps;
    if (constant_sigma) {
      eps = static_cast<double>(steps) * step(alpha, config.sigmas.front());
    } else {
      std::unordered_map<std::uint64_t, double> per_sigma;
      std::vector<double> per_step;
      per_step.reserve(steps);
      bool hit_inf = false;
      for (double s : config.sigmas) {
        const std::uint64_t bits = std::bit_cast<std::uint64_t>(s);
        auto it = per_sigma.find(bits);
        if (it == per_sigma.end()) it = per_sigma.emplace(bits, step(alpha, s)).first;
        if (std::isinf(it->second)) {
          hit_inf = true;
          break;
        }
        per_step.push_back(it->second);
      }
      eps = hit_inf ? kPosInf : PairwiseSum(per_step);
    }
    curve.epsilons.push_back(eps);
  }
  return curve;
}

RdpCurve Compose(const AccountantConfig& config) {
  const double q = config.spec.Rate();
  const int m = config.taylor_order;
  if (config.adjacency == Adjacency::kAddRemove) {
    return ComposeSteps(config, "fswor_ar", [q, m](double alpha, double sigma) {
      return StepAddRemove(alpha, sigma, q, m);
    });
  }
  return ComposeSteps(config, "fswor_ro", [q, m](double alpha, double sigma) {
    return StepReplaceOne(alpha, sigma, q, m);
  });
}

}  // namespace fsrdp
