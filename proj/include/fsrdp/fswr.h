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

#ifndef FSRDP_FSWR_H_
#define FSRDP_FSWR_H_

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "fsrdp/types.h"

namespace fsrdp {

// Binomial replacement-count weights behind both FSwR bounds:
//   a_n  = C(|B|,n) |D|^{-n} (1 - 1/|D|)^{|B|-n},      n = 0..|B|,
//   q~   = 1 - (1 - 1/|D|)^{|B|} = sum_{n>=1} a_n,
//   a~_n = a_n / q~,                                    n = 1..|B|.
// Kept in log space; a_n underflows a double already for moderate n.
struct FswrWeights {
  double q_tilde = 0.0;
  std::vector<double> log_a;  // index 0..|B|

  static FswrWeights For(std::int64_t batch, std::int64_t dataset);

  double A(int n) const;       // a_n
  double ATilde(int n) const;  // a_n / q~, n >= 1
  double LogATilde(int n) const;
};

// Retained index sets T_k, one per recursion level k = 2..alpha, for the
// truncated lower-bound evaluation.  Every retained term is non-negative, so
// any truncation stays a valid lower bound; larger sets are tighter.
struct TruncationScheme {
  std::map<int, std::vector<int>> level_sets;

  // T_2 = {0..|B|} and T_k = {0, 1, 2, |B|} for k > 2.
  static TruncationScheme Default(int alpha, int batch);
  // Every level keeps all of {0..|B|}; exact evaluation of the nested sum.
  static TruncationScheme Full(int alpha, int batch);

  const std::vector<int>& Level(int k) const;
  void Validate(int alpha, int batch) const;
};

// One step of FSwR DP-SGD under add/remove adjacency,
//   (1/(alpha-1)) log [ sum_{n=1}^{|B|} a~_n H~_{alpha, sigma/n}(q~) ],
// where H~ is the order-m Taylor upper bound.  Requires |B| < |D|.
double FswrUpperStep(double alpha, double sigma, const SubsamplingSpec& spec, int m);

// Generalized form: indices n <= K keep the mixture treatment with a caller
// chosen q~ (admissible iff 1 >= q~ >= (1 + a_0 / sum_{n=1}^K a_n)^{-1}),
// indices above K fall back to the plain Gaussian moment term
// a_n e^{2 alpha(alpha-1) n^2 / sigma^2}.  K = |B| with the smallest
// admissible q~ reproduces FswrUpperStep.
double FswrUpperStepGeneralK(double alpha, double sigma, const SubsamplingSpec& spec, int m,
                             int K, double q_tilde);

// Worst-case one-step lower bound at integer alpha >= 2,
//   (1/(alpha-1)) log F_{T,alpha}(c, 0),  c = 4/sigma^2,
// via the truncated recursion
//   F_{T,2}(c,d) = sum_{n in T_2} a_n e^{dn} (1 - 1/N + e^{cn+d}/N)^{|B|},
//   F_{T,k}(c,d) = sum_{n in T_k} a_n e^{dn} F_{T,k-1}(c, d + cn).
// Evaluated in log space with memoization on the integer lattice d = c * s.
// The dataset size N is a free parameter of the worst case.
double FswrLowerBound(int alpha, double sigma, int batch, std::int64_t dataset,
                      const TruncationScheme& scheme);

// Closed-form loosening of the lower bound (the n = |B| diagonal term):
//   (alpha |B| / (alpha-1)) (2 |B| (alpha-1)/sigma^2 - log|B| - log(1/q)).
// Unbounded in |B| at fixed q; the with-replacement phase transition.
double FswrLowerLoosened(int alpha, double sigma, int batch, double q);

// Evaluates the lower bound for many integer orders against one persistent
// memo.  Applies when every level k > 2 keeps the same index set (true for
// the Default and Full schemes), which makes F_{T,k} independent of the
// top-level order.
class FswrLowerEvaluator {
 public:
  // base_level is T_2, tail_level the shared T_k for k > 2.
  FswrLowerEvaluator(double sigma, int batch, std::int64_t dataset,
                     std::vector<int> base_level, std::vector<int> tail_level);
  static FswrLowerEvaluator WithDefaultTruncation(double sigma, int batch,
                                                  std::int64_t dataset);

  double Lower(int alpha);

 private:
  double LogF(int level, long shift);

  double c_;
  int batch_;
  std::vector<int> base_level_;
  std::vector<int> tail_level_;
  std::vector<double> log_a_;
  double log_inv_n_ = 0.0;
  double log_1m_inv_n_ = 0.0;
  std::unordered_map<std::uint64_t, double> memo_;
};

// T-step composition of FswrUpperStep; add/remove adjacency only.
RdpCurve ComposeFswr(const AccountantConfig& config);

}  // namespace fsrdp

#endif  // FSRDP_FSWR_H_
