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

#include "fsrdp/moments.h"

#include <atomic>
#include <bit>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace fsrdp {
namespace {

std::atomic<long long> g_kernel_evaluations{0};

struct MomentKey {
  std::uint64_t sigma_bits;
  int k;
  bool operator==(const MomentKey& o) const {
    return sigma_bits == o.sigma_bits && k == o.k;
  }
};

struct MomentKeyHash {
  std::size_t operator()(const MomentKey& key) const {
    std::uint64_t h = key.sigma_bits * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<std::uint64_t>(key.k) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

// log(e^x - 1) without materializing e^x.
double LogExpm1(double x) {
  if (x > 36.0) return x + std::log1p(-std::exp(-x));
  return std::log(std::expm1(x));
}

double LogBinomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// sum_{l=2}^{k} (-1)^{k-l} C(k,l) (e^{2 l(l-1)/sigma^2} - 1).  Writing each
// exponential as expm1 removes the O(1) part of the cancellation: the
// constant-terms alternating sum is identically zero for k >= 1.
SignedLog ComputeRatioMomentLog(double sigma, int k) {
  g_kernel_evaluations.fetch_add(1, std::memory_order_relaxed);
  if (k == 0) return SignedLog::One();
  if (k == 1) return SignedLog::Zero();
  const double inv_sigma2 = 1.0 / (sigma * sigma);
  std::vector<SignedLog> terms;
  terms.reserve(k - 1);
  for (int l = 2; l <= k; ++l) {
    const int sign = ((k - l) % 2 == 0) ? 1 : -1;
    const double log_mag = LogBinomial(k, l) + LogExpm1(2.0 * l * (l - 1) * inv_sigma2);
    terms.push_back(SignedLog::Make(sign, log_mag));
  }
  SignedLog m = SignedLogSum(std::move(terms));
  // Even-order moments are non-negative; a negative result can only be
  // residual cancellation noise.
  if (k % 2 == 0 && m.sign < 0) return SignedLog::Zero();
  return m;
}

}  // namespace

SignedLog RatioMomentLog(double sigma, int k) {
  if (!(sigma > 0.0)) throw std::domain_error("RatioMomentLog: sigma must be positive");
  if (k < 0) throw std::domain_error("RatioMomentLog: moment order must be non-negative");
  static std::mutex mutex;
  static std::unordered_map<MomentKey, SignedLog, MomentKeyHash> cache;
  const MomentKey key{std::bit_cast<std::uint64_t>(sigma), k};
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const SignedLog m = ComputeRatioMomentLog(sigma, k);
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(key, m).first->second;
}

SignedLog AbsMomentBoundLog(double sigma, int j) {
  if (j < 1) throw std::domain_error("AbsMomentBoundLog: order must be >= 1");
  if (j % 2 == 0) return RatioMomentLog(sigma, j);
  return Sqrt(RatioMomentLog(sigma, j - 1) * RatioMomentLog(sigma, j + 1));
}

namespace {
Saturating ToSaturating(const SignedLog& v) {
  if (v.OverflowsDouble()) {
    return {v.sign < 0 ? -kPosInf : kPosInf, true};
  }
  return {v.ToValue(), false};
}
}  // namespace

Saturating RatioMoment(double sigma, int k) { return ToSaturating(RatioMomentLog(sigma, k)); }

Saturating AbsMomentBound(double sigma, int j) { return ToSaturating(AbsMomentBoundLog(sigma, j)); }

long long RatioMomentKernelEvaluations() {
  return g_kernel_evaluations.load(std::memory_order_relaxed);
}

}  // namespace fsrdp
