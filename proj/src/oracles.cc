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

#include "fsrdp/oracles.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fsrdp {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t SplitMix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Uniform in the open interval (0, 1).
double UniformOpen(std::uint64_t& state) {
  return (static_cast<double>(SplitMix64(state) >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t ExactBinomial(int n, int k) {
  // n is small (<= 63 in every oracle use); the running product stays exact.
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

double ExactHInteger(int alpha, double sigma, double q) {
  if (alpha < 2) throw std::domain_error("ExactHInteger: alpha must be an integer >= 2");
  if (!(sigma > 0.0)) throw std::domain_error("ExactHInteger: sigma must be positive");
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("ExactHInteger: q must lie in [0, 1]");
  const double inv_sigma2 = 1.0 / (sigma * sigma);
  double sum = 0.0;
  double binom = 1.0;  // C(alpha, k), updated multiplicatively
  for (int k = 0; k <= alpha; ++k) {
    const double term = binom * std::pow(q, k) * std::pow(1.0 - q, alpha - k) *
                        std::exp(2.0 * k * (k - 1) * inv_sigma2);
    sum += term;
    binom = binom * (alpha - k) / (k + 1);
  }
  return sum;
}

double ExactLogHInteger(int alpha, double sigma, double q) {
  if (alpha < 2) throw std::domain_error("ExactLogHInteger: alpha must be an integer >= 2");
  if (!(sigma > 0.0)) throw std::domain_error("ExactLogHInteger: sigma must be positive");
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("ExactLogHInteger: q must lie in [0, 1]");
  const double inv_sigma2 = 1.0 / (sigma * sigma);
  // The pmf sums to one, so H - 1 = sum pmf_k (e^{g_k} - 1) term by term.
  double excess = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= alpha; ++k) {
    excess += binom * std::pow(q, k) * std::pow(1.0 - q, alpha - k) *
              std::expm1(2.0 * k * (k - 1) * inv_sigma2);
    binom = binom * (alpha - k) / (k + 1);
  }
  return std::log1p(excess);
}

MixtureSpec AddRemoveMixture(double q) { return {{q, 1.0 - q}, {1.0, 0.0}}; }

MixtureSpec PureReference() { return {{1.0}, {0.0}}; }

MixtureSpec ReplaceOneNumerator(double q) { return {{q, 1.0 - q}, {0.5, 0.0}}; }

MixtureSpec ReplaceOneDenominator(double q) { return {{q, 1.0 - q}, {-0.5, 0.0}}; }

namespace {

void CheckMixture(const MixtureSpec& mix) {
  if (mix.weights.empty() || mix.weights.size() != mix.means.size()) {
    throw std::domain_error("mixture must have matching non-empty weights and means");
  }
  double total = 0.0;
  for (double w : mix.weights) {
    if (!(w >= 0.0)) throw std::domain_error("mixture weights must be non-negative");
    total += w;
  }
  if (std::fabs(total - 1.0) > 1e-9) throw std::domain_error("mixture weights must sum to 1");
}

// Density ratio mixture(x)/N(0, v)(x) = sum_i w_i e^{(2 x mu_i - mu_i^2)/(2v)}.
double MixtureRatio(const MixtureSpec& mix, double x, double inv_two_var) {
  double r = 0.0;
  for (std::size_t i = 0; i < mix.weights.size(); ++i) {
    const double mu = mix.means[i];
    r += mix.weights[i] * std::exp((2.0 * x * mu - mu * mu) * inv_two_var);
  }
  return r;
}

}  // namespace

McEstimate McMixtureRenyi(double alpha, const MixtureSpec& numerator,
                          const MixtureSpec& denominator, double sigma_eff,
                          std::int64_t samples, std::uint64_t seed) {
  if (!(alpha > 1.0)) throw std::domain_error("McMixtureRenyi: alpha must be > 1");
  if (!(sigma_eff > 0.0)) throw std::domain_error("McMixtureRenyi: sigma_eff must be positive");
  if (samples < 10000) throw std::domain_error("McMixtureRenyi: need at least 10^4 samples");
  CheckMixture(numerator);
  CheckMixture(denominator);

  const double inv_two_var = 1.0 / (2.0 * sigma_eff * sigma_eff);
  constexpr std::int64_t kBlock = 1 << 14;
  double sum = 0.0, sum_sq = 0.0;
  double sum_c = 0.0, sum_sq_c = 0.0;  // Kahan compensations

  std::int64_t done = 0;
  for (std::int64_t block = 0; done < samples; ++block) {
    std::uint64_t state = seed + 0x632BE59BD9B4E019ull * static_cast<std::uint64_t>(block + 1);
    const std::int64_t count = std::min(kBlock, samples - done);
    for (std::int64_t i = 0; i < count; ++i) {
      const double u1 = UniformOpen(state);
      const double u2 = UniformOpen(state);
      const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
      const double x = sigma_eff * z;
      double pair = 0.0;
      for (const double sign : {1.0, -1.0}) {
        const double xi = sign * x;
        const double qr = MixtureRatio(numerator, xi, inv_two_var);
        const double pr = MixtureRatio(denominator, xi, inv_two_var);
        pair += 0.5 * std::pow(qr, alpha) * std::pow(pr, 1.0 - alpha);
      }
      double y = pair - sum_c;
      double t = sum + y;
      sum_c = (t - sum) - y;
      sum = t;
      y = pair * pair - sum_sq_c;
      t = sum_sq + y;
      sum_sq_c = (t - sum_sq) - y;
      sum_sq = t;
    }
    done += count;
  }

  McEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.value = sum / static_cast<double>(samples);
  const double var =
      std::max(0.0, sum_sq / static_cast<double>(samples) - est.value * est.value);
  est.std_error = std::sqrt(var / static_cast<double>(samples - 1));
  return est;
}

DecompositionReport ValidateFsworDecomposition(int dataset, int batch) {
  if (dataset < 1 || dataset > 20 || batch < 1 || batch > dataset) {
    throw std::domain_error("ValidateFsworDecomposition: need 1 <= batch <= dataset <= 20");
  }
  DecompositionReport report;
  // All probabilities are integer multiples of 1/(|D| * C(|D|-1, |B|') * |B|),
  // with |B|' the reduced-set subset size; accumulate exact numerators per
  // subset mask.
  const int d = dataset, b = batch;
  const bool degenerate = (b == d);  // q = 1: the swap branch always fires
  const std::uint64_t reduced_choices = degenerate ? 1 : ExactBinomial(d - 1, b);
  const std::uint64_t denom = static_cast<std::uint64_t>(d) * reduced_choices * b;

  std::map<std::uint32_t, std::uint64_t> mass;  // subset mask -> numerator
  const std::uint32_t limit = 1u << (d - 1);
  if (degenerate) {
    // q = 1: the swap branch always fires, the base "subset" is the whole
    // reduced index set, and B is deterministically the full dataset.
    mass[(limit - 1) | (1u << (d - 1))] += denom;
  } else {
    // Enumerate base subsets b' of {0..|D|-2} of size |B|.
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
      if (std::popcount(mask) != b) continue;
      // No-swap branch: keep b'; weight (1-q) * 1/C = (|D|-|B|) * |B| over denom.
      mass[mask] += static_cast<std::uint64_t>(d - b) * b;
      // Swap branch: drop one element of b', adjoin |D|-1; each drop choice
      // has conditional weight 1/|B| and the branch carries q = |B|/|D|.
      for (int i = 0; i < d - 1; ++i) {
        if (!(mask & (1u << i))) continue;
        const std::uint32_t swapped = (mask & ~(1u << i)) | (1u << (d - 1));
        mass[swapped] += b;  // q * (1/C) * (1/|B|) over denom
      }
    }
  }

  // Expected: every size-|B| subset of {0..|D|-1} at probability 1/C(|D|,|B|).
  const std::uint64_t total_subsets = ExactBinomial(d, b);
  if (denom % total_subsets != 0) {
    report.detail = "common denominator not divisible by subset count";
    return report;
  }
  const std::uint64_t expected = denom / total_subsets;
  std::uint64_t seen = 0;
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
    if (std::popcount(mask) != b) continue;
    ++seen;
    const auto it = mass.find(mask);
    const std::uint64_t got = it == mass.end() ? 0 : it->second;
    if (got != expected) {
      std::ostringstream msg;
      msg << "subset mask " << mask << ": got " << got << "/" << denom << ", expected "
          << expected << "/" << denom;
      report.detail = msg.str();
      report.outcomes = static_cast<std::int64_t>(seen);
      return report;
    }
  }
  report.exact_match = true;
  report.outcomes = static_cast<std::int64_t>(seen);
  return report;
}

namespace {

// Weight numerators for the swap-count distribution Binomial(|B|, 1/|D|)
// over the common denominator |D|^{|B|}: C(|B|,n) (|D|-1)^{|B|-n}.
std::uint64_t SwapCountNumerator(int batch, int dataset, int n) {
  std::uint64_t w = ExactBinomial(batch, n);
  for (int i = 0; i < batch - n; ++i) w *= static_cast<std::uint64_t>(dataset - 1);
  return w;
}

}  // namespace

DecompositionReport ValidateFswrDecomposition(int dataset, int batch) {
  if (dataset < 2 || dataset > 8 || batch < 1 || batch > 6) {
    throw std::domain_error("ValidateFswrDecomposition: need 2 <= dataset <= 8, 1 <= batch <= 6");
  }
  DecompositionReport report;
  const int d = dataset, b = batch;
  // Common denominator: (|D|-1)^{|B|} (base draws) * |D|^{|B|} (swap count)
  // * |B|! (permutation).  Every tuple must end at mass denom / |D|^{|B|}.
  std::uint64_t fact = 1;
  for (int i = 2; i <= b; ++i) fact *= i;
  std::uint64_t reduced_pow = 1, full_pow = 1;
  for (int i = 0; i < b; ++i) {
    reduced_pow *= static_cast<std::uint64_t>(d - 1);
    full_pow *= static_cast<std::uint64_t>(d);
  }
  const std::uint64_t expected = reduced_pow * fact;

  std::map<std::vector<int>, std::uint64_t> mass;
  // Odometer over base tuples b' in {0..|D|-2}^{|B|}.
  std::vector<int> base(b, 0);
  std::vector<int> perm(b);
  while (true) {
    for (int n = 0; n <= b; ++n) {
      const std::uint64_t w_n = SwapCountNumerator(b, d, n);
      std::iota(perm.begin(), perm.end(), 1);
      do {
        // Positions perm[0..n-1] are overwritten by the distinguished index.
        std::vector<int> tuple(base);
        for (int j = 0; j < n; ++j) tuple[perm[j] - 1] = d - 1;
        mass[tuple] += w_n;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    int pos = b - 1;
    while (pos >= 0 && base[pos] == d - 2) base[pos--] = 0;
    if (pos < 0) break;
    ++base[pos];
  }

  std::uint64_t seen = 0;
  std::vector<int> tuple(b, 0);
  while (true) {
    ++seen;
    const auto it = mass.find(tuple);
    const std::uint64_t got = it == mass.end() ? 0 : it->second;
    if (got != expected) {
      std::ostringstream msg;
      msg << "tuple (";
      for (int i = 0; i < b; ++i) msg << (i ? "," : "") << tuple[i];
      msg << "): got " << got << ", expected " << expected;
      report.detail = msg.str();
      report.outcomes = static_cast<std::int64_t>(seen);
      return report;
    }
    int pos = b - 1;
    while (pos >= 0 && tuple[pos] == d - 1) tuple[pos--] = 0;
    if (pos < 0) break;
    ++tuple[pos];
  }
  report.exact_match = true;
  report.outcomes = static_cast<std::int64_t>(full_pow);
  return report;
}

double BruteFswrLower(int alpha, double sigma, int batch, std::int64_t dataset) {
  if (alpha < 2 || alpha > 6) throw std::domain_error("BruteFswrLower: alpha must lie in [2, 6]");
  if (batch < 1 || batch > 10) throw std::domain_error("BruteFswrLower: batch must lie in [1, 10]");
  if (dataset < 2) throw std::domain_error("BruteFswrLower: dataset must be >= 2");
  const double c = 4.0 / (sigma * sigma);
  const double inv_d = 1.0 / static_cast<double>(dataset);
  std::vector<double> a(batch + 1);
  for (int n = 0; n <= batch; ++n) {
    a[n] = static_cast<double>(ExactBinomial(batch, n)) * std::pow(inv_d, n) *
           std::pow(1.0 - inv_d, batch - n);
  }
  // sum - 1 accumulated via expm1 so that near-degenerate cases (sigma large)
  // survive the final log1p with full precision.
  double excess = 0.0;
  std::vector<int> idx(alpha, 0);
  while (true) {
    long pair_sum = 0;
    for (int i = 0; i < alpha; ++i) {
      for (int j = i + 1; j < alpha; ++j) pair_sum += static_cast<long>(idx[i]) * idx[j];
    }
    double weight = 1.0;
    for (int i = 0; i < alpha; ++i) weight *= a[idx[i]];
    excess += weight * std::expm1(c * static_cast<double>(pair_sum));
    int pos = alpha - 1;
    while (pos >= 0 && idx[pos] == batch) idx[pos--] = 0;
    if (pos < 0) break;
    ++idx[pos];
  }
  return std::max(0.0, std::log1p(excess)) / (alpha - 1.0);
}

double BruteVariance(const Population& pop, std::int64_t batch, SamplingMode mode) {
  const int d = static_cast<int>(pop.Size());
  if (d < 1 || d > 12) throw std::domain_error("BruteVariance: population size must lie in [1, 12]");
  if (batch < 1 || batch > d) throw std::domain_error("BruteVariance: batch must lie in [1, |D|]");
  const int b = static_cast<int>(batch);
  const std::vector<double>& a = pop.values;
  double mean = 0.0, mean_sq = 0.0;

  switch (mode) {
    case SamplingMode::kPoisson: {
      const double q = static_cast<double>(b) / d;
      for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
        double p = 1.0, z = 0.0;
        for (int i = 0; i < d; ++i) {
          if (mask & (1u << i)) {
            p *= q;
            z += a[i];
          } else {
            p *= 1.0 - q;
          }
        }
        z /= b;
        mean += p * z;
        mean_sq += p * z * z;
      }
      break;
    }
    case SamplingMode::kFswor: {
      const double p = 1.0 / static_cast<double>(ExactBinomial(d, b));
      for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
        if (std::popcount(mask) != b) continue;
        double z = 0.0;
        for (int i = 0; i < d; ++i) {
          if (mask & (1u << i)) z += a[i];
        }
        z /= b;
        mean += p * z;
        mean_sq += p * z * z;
      }
      break;
    }
    case SamplingMode::kFswr: {
      double p = 1.0;
      for (int i = 0; i < b; ++i) p /= d;
      std::vector<int> idx(b, 0);
      while (true) {
        double z = 0.0;
        for (int i = 0; i < b; ++i) z += a[idx[i]];
        z /= b;
        mean += p * z;
        mean_sq += p * z * z;
        int pos = b - 1;
        while (pos >= 0 && idx[pos] == d - 1) idx[pos--] = 0;
        if (pos < 0) break;
        ++idx[pos];
      }
      break;
    }
  }
  return std::max(0.0, mean_sq - mean * mean);
}

}  // namespace fsrdp
