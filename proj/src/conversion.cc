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

#include "fsrdp/conversion.h"

#include <cmath>
#include <stdexcept>

#include "fsrdp/log_space.h"

namespace fsrdp {

std::string ToString(ConversionVariant variant) {
  return variant == ConversionVariant::kClassic ? "classic" : "improved";
}

DpGuarantee RdpToDp(const RdpCurve& curve, double delta, ConversionVariant variant) {
  if (curve.Empty()) throw std::domain_error("RdpToDp: empty curve");
  if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("RdpToDp: delta must lie in (0,1)");
  const double log_inv_delta = -std::log(delta);

  DpGuarantee best;
  best.epsilon = kPosInf;
  best.alpha_star = curve.alphas.front();
  best.delta = delta;
  best.variant = variant;
  for (std::size_t i = 0; i < curve.alphas.size(); ++i) {
    const double alpha = curve.alphas[i];
    const double eps_rdp = curve.epsilons[i];
    if (std::isinf(eps_rdp)) continue;
    double candidate;
    if (variant == ConversionVariant::kClassic) {
      candidate = eps_rdp + log_inv_delta / (alpha - 1.0);
    } else {
      candidate = eps_rdp + std::log1p(-1.0 / alpha) +
                  (log_inv_delta - std::log(alpha)) / (alpha - 1.0);
    }
    if (candidate < best.epsilon) {
      best.epsilon = candidate;
      best.alpha_star = alpha;
    }
  }
  if (best.epsilon < 0.0) best.epsilon = 0.0;
  return best;
}

double EpsApprox(double r, double delta) {
  if (!(r >= 0.0)) throw std::domain_error("EpsApprox: R must be non-negative");
  if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("EpsApprox: delta must lie in (0,1)");
  return 2.0 * std::sqrt(std::log(1.0 / delta) * r);
}

}  // namespace fsrdp
