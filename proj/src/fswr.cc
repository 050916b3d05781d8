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

#include "fsrdp/fswr.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "fsrdp/fswor.h"
#include "fsrdp/log_space.h"
#include "fsrdp/numeric.h"

namespace fsrdp {

FswrWeights FswrWeights::For(std::int64_t batch, std::int64_t dataset) {
  if (batch < 1) throw std::domain_error("FswrWeights: batch must be >= 1");
  if (dataset < 2) throw std::domain_error("FswrWeights: dataset must be >= 2");
  FswrWeights w;
  const double log_p = -std::log(static_cast<double>(dataset));  // log(1/|D|)
  const double log_1mp = std::log1p(-1.0 / static_cast<double>(dataset));
  w.log_a.resize(batch + 1);
  for (int n = 0; n <= batch; ++n) {
    w.log_a[n] = LogBinomialCoefficient(batch, n) + n * log_p + (batch - n) * log_1mp;
  }
  w.q_tilde = -std::expm1(batch * log_1mp);  // 1 - (1 - 1/|D|)^{|B|}
  return w;
}

double FswrWeights::A(int n) const { return std::exp(log_a.at(n)); }

double FswrWeights::LogATilde(int n) const {
  if (n < 1) throw std::domain_error("FswrWeights: a~ is defined for n >= 1");
  return log_a.at(n) - std::log(q_tilde);
}

double FswrWeights::ATilde(int n) const { return std::exp(LogATilde(n)); }

TruncationScheme TruncationScheme::Default(int alpha, int batch) {
  TruncationScheme t;
  std::vector<int> full(batch + 1);
  for (int n = 0; n <= batch; ++n) full[n] = n;
  t.level_sets[2] = full;
  std::vector<int> small;
  for (int n : {0, 1, 2}) {
    if (n <= batch) small.push_back(n);
  }
  if (std::find(small.begin(), small.end(), batch) == small.end()) small.push_back(batch);
  for (int k = 3; k <= alpha; ++k) t.level_sets[k] = small;
  return t;
}

TruncationScheme TruncationScheme::Full(int alpha, int batch) {
  TruncationScheme t;
  std::vector<int> full(batch + 1);
  for (int n = 0; n <= batch; ++n) full[n] = n;
  for (int k = 2; k <= alpha; ++k) t.level_sets[k] = full;
  return t;
}

const std::vector<int>& TruncationScheme::Level(int k) const {
  auto it = level_sets.find(k);
  if (it == level_sets.end()) {
    throw std::domain_error("TruncationScheme: missing level set");
  }
  return it->second;
}

void TruncationScheme::Validate(int alpha, int batch) const {
  for (int k = 2; k <= alpha; ++k) {
    const std::vector<int>& set = Level(k);
    if (set.empty()) throw std::domain_error("TruncationScheme: empty level set");
    int prev = -1;
    for (int n : set) {
      if (n < 0 || n > batch) throw std::domain_error("TruncationScheme: index out of range");
      if (n <= prev) throw std::domain_error("TruncationScheme: indices must be sorted unique");
      prev = n;
    }
  }
}

namespace {

double UpperStepCore(double alpha, double sigma, const FswrWeights& w, int batch, int m,
                     int K, double q_tilde) {
  // The mixture weights (a~_0, a~_1..a~_K, a_{K+1}..a_B) sum to one
  // identically, so the bracket is 1 + sum of weighted (H_n - 1) excesses;
  // accumulating the excesses alone keeps full precision when the bound is
  // tiny and still handles the tail-dominated regime in log space.
  const double log_qt = std::log(q_tilde);
  std::vector<double> excess;
  excess.reserve(batch);
  for (int n = 1; n <= K; ++n) {
    const double log_h = LogHUpper(alpha, sigma / n, q_tilde, m);
    excess.push_back(w.log_a[n] - log_qt + LogExpm1Stable(log_h));
  }
  for (int n = K + 1; n <= batch; ++n) {
    excess.push_back(w.log_a[n] +
                     LogExpm1Stable(2.0 * alpha * (alpha - 1.0) * n * n / (sigma * sigma)));
  }
  const double log_bracket = LogAdd(0.0, LogSumExp(excess));
  return std::max(0.0, log_bracket) / (alpha - 1.0);
}

}  // namespace

double FswrUpperStepGeneralK(double alpha, double sigma, const SubsamplingSpec& spec, int m,
                             int K, double q_tilde) {
  spec.Validate();
  if (!(alpha > 1.0)) throw std::domain_error("alpha must be > 1");
  if (!(sigma > 0.0)) throw std::domain_error("sigma must be positive");
  const int batch = static_cast<int>(spec.batch);
  if (K < 1 || K > batch) throw std::domain_error("FswrUpperStepGeneralK: K out of range");

  const FswrWeights w = FswrWeights::For(spec.batch, spec.dataset);
  // Admissibility: q~ may not fall below (1 + a_0/sum_{n<=K} a_n)^{-1};
  // below that the leftover weight a~_0 would be negative.
  std::vector<double> head(w.log_a.begin() + 1, w.log_a.begin() + K + 1);
  const double log_head_sum = LogSumExp(head);
  const double q_min = 1.0 / (1.0 + std::exp(w.log_a[0] - log_head_sum));
  if (!(q_tilde <= 1.0) || q_tilde < q_min * (1.0 - 1e-12)) {
    throw std::domain_error("FswrUpperStepGeneralK: q_tilde violates admissibility");
  }
  return UpperStepCore(alpha, sigma, w, batch, m, K, q_tilde);
}

double FswrUpperStep(double alpha, double sigma, const SubsamplingSpec& spec, int m) {
  spec.Validate();
  if (!(alpha > 1.0)) throw std::domain_error("alpha must be > 1");
  if (!(sigma > 0.0)) throw std::domain_error("sigma must be positive");
  const int batch = static_cast<int>(spec.batch);
  const FswrWeights w = FswrWeights::For(spec.batch, spec.dataset);
  // K = |B| with the minimal admissible q~ = 1 - (1 - 1/|D|)^{|B|}; the
  // leftover weight a~_0 vanishes identically.
  return UpperStepCore(alpha, sigma, w, batch, m, batch, w.q_tilde);
}

namespace {

class TruncatedRecursion {
 public:
  TruncatedRecursion(double c, int batch, std::int64_t dataset, const TruncationScheme& scheme)
      : c_(c), batch_(batch), scheme_(scheme) {
    const FswrWeights w = FswrWeights::For(batch, dataset);
    log_a_ = w.log_a;
    log_inv_n_ = -std::log(static_cast<double>(dataset));
    log_1m_inv_n_ = std::log1p(-1.0 / static_cast<double>(dataset));
  }

  // log F_{T,k}(c, c*shift); shift is the integer sum of indices chosen at
  // the levels above k.
  double LogF(int k, long shift) {
    const std::uint64_t key = (static_cast<std::uint64_t>(k) << 40) ^ static_cast<std::uint64_t>(shift);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const std::vector<int>& set = scheme_.Level(k);
    std::vector<double> terms;
    terms.reserve(set.size());
    if (k == 2) {
      for (int n : set) {
        // (1 - 1/N + e^{c(n+shift)}/N)^{|B|}, assembled in log space.
        const double log_mix = LogAdd(log_1m_inv_n_, c_ * (n + shift) + log_inv_n_);
        terms.push_back(log_a_[n] + c_ * shift * n + batch_ * log_mix);
      }
    } else {
      for (int n : set) {
        terms.push_back(log_a_[n] + c_ * shift * n + LogF(k - 1, shift + n));
      }
    }
    const double value = LogSumExp(terms);
    memo_.emplace(key, value);
    return value;
  }

 private:
  double c_;
  int batch_;
  const TruncationScheme& scheme_;
  std::vector<double> log_a_;
  double log_inv_n_;
  double log_1m_inv_n_;
  std::unordered_map<std::uint64_t, double> memo_;
};

}  // namespace

double FswrLowerBound(int alpha, double sigma, int batch, std::int64_t dataset,
                      const TruncationScheme& scheme) {
  if (alpha < 2) throw std::domain_error("FswrLowerBound: alpha must be an integer >= 2");
  if (!(sigma > 0.0)) throw std::domain_error("FswrLowerBound: sigma must be positive");
  if (batch < 1) throw std::domain_error("FswrLowerBound: batch must be >= 1");
  if (dataset < 2) throw std::domain_error("FswrLowerBound: dataset must be >= 2");
  scheme.Validate(alpha, batch);
  TruncatedRecursion rec(4.0 / (sigma * sigma), batch, dataset, scheme);
  return std::max(0.0, rec.LogF(alpha, 0)) / (alpha - 1.0);
}

double FswrLowerLoosened(int alpha, double sigma, int batch, double q) {
  if (alpha < 2) throw std::domain_error("FswrLowerLoosened: alpha must be >= 2");
  if (!(q > 0.0) || q >= 1.0) throw std::domain_error("FswrLowerLoosened: q must lie in (0,1)");
  const double b = static_cast<double>(batch);
  return (alpha * b / (alpha - 1.0)) *
         (2.0 * b * (alpha - 1.0) / (sigma * sigma) - std::log(b) - std::log(1.0 / q));
}

FswrLowerEvaluator::FswrLowerEvaluator(double sigma, int batch, std::int64_t dataset,
                                       std::vector<int> base_level, std::vector<int> tail_level)
    : c_(4.0 / (sigma * sigma)),
      batch_(batch),
      base_level_(std::move(base_level)),
      tail_level_(std::move(tail_level)) {
  if (!(sigma > 0.0)) throw std::domain_error("FswrLowerEvaluator: sigma must be positive");
  TruncationScheme probe;
  probe.level_sets[2] = base_level_;
  probe.level_sets[3] = tail_level_;
  probe.Validate(3, batch);
  const FswrWeights w = FswrWeights::For(batch, dataset);
  log_a_ = w.log_a;
  log_inv_n_ = -std::log(static_cast<double>(dataset));
  log_1m_inv_n_ = std::log1p(-1.0 / static_cast<double>(dataset));
}

FswrLowerEvaluator FswrLowerEvaluator::WithDefaultTruncation(double sigma, int batch,
                                                             std::int64_t dataset) {
  const TruncationScheme scheme = TruncationScheme::Default(3, batch);
  return FswrLowerEvaluator(sigma, batch, dataset, scheme.Level(2), scheme.Level(3));
}

double FswrLowerEvaluator::LogF(int level, long shift) {
  const std::uint64_t key =
      (static_cast<std::uint64_t>(level) << 40) + static_cast<std::uint64_t>(shift);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  const std::vector<int>& set = level == 2 ? base_level_ : tail_level_;
  std::vector<double> terms;
  terms.reserve(set.size());
  if (level == 2) {
    for (int n : set) {
      const double log_mix = LogAdd(log_1m_inv_n_, c_ * (n + shift) + log_inv_n_);
      terms.push_back(log_a_[n] + c_ * shift * n + batch_ * log_mix);
    }
  } else {
    for (int n : set) {
      terms.push_back(log_a_[n] + c_ * shift * n + LogF(level - 1, shift + n));
    }
  }
  const double value = LogSumExp(terms);
  memo_.emplace(key, value);
  return value;
}

double FswrLowerEvaluator::Lower(int alpha) {
  if (alpha < 2) throw std::domain_error("FswrLowerEvaluator: alpha must be an integer >= 2");
  return std::max(0.0, LogF(alpha, 0)) / (alpha - 1.0);
}

RdpCurve ComposeFswr(const AccountantConfig& config) {
  if (config.adjacency != Adjacency::kAddRemove) {
    throw std::domain_error("ComposeFswr: with-replacement bound holds under add/remove adjacency");
  }
  const SubsamplingSpec spec = config.spec;
  const int m = config.taylor_order;
  return ComposeSteps(config, "fswr_upper", [spec, m](double alpha, double sigma) {
    return FswrUpperStep(alpha, sigma, spec, m);
  });
}

}  // namespace fsrdp
