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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "fsrdp/fswor.h"
#include "fsrdp/fswr.h"
#include "fsrdp/oracles.h"
#include "test_util.h"

using namespace fsrdp;
using fsrdp::test::RelDiff;
using fsrdp::test::Rng;

TEST_CASE("weights: q~ at the working-point parameters") {
  const FswrWeights w = FswrWeights::For(120, 50000);
  CHECK(RelDiff(w.q_tilde, 2.3971462454062784e-3) < 1e-12);
}

TEST_CASE("weights normalize") {
  for (auto [batch, dataset] : {std::pair<int, int>{120, 50000}, {1, 2}, {7, 19}, {64, 100}}) {
    const FswrWeights w = FswrWeights::For(batch, dataset);
    double a_sum = 0.0, a_tilde_sum = 0.0;
    for (int n = 0; n <= batch; ++n) a_sum += w.A(n);
    for (int n = 1; n <= batch; ++n) a_tilde_sum += w.ATilde(n);
    CHECK(std::fabs(a_sum - 1.0) <= 1e-12);
    CHECK(std::fabs(a_tilde_sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("single-draw batch reduces to the without-replacement step") {
  const SubsamplingSpec spec{1, 5000};
  for (double alpha : {2.0, 3.5, 16.0}) {
    const double fswr = FswrUpperStep(alpha, 6.0, spec, 3);
    const double fswor = StepAddRemove(alpha, 6.0, 1.0 / 5000.0, 3);
    CHECK(RelDiff(fswr, fswor) < 1e-9);
  }
}

TEST_CASE("small batches keep the without-replacement leading order") {
  // With the binomial tail suppressed (small |B|), the with-replacement
  // upper bound tracks the add/remove step at matched q.
  for (int batch : {2, 4, 8}) {
    const SubsamplingSpec spec{batch, batch * 2500};
    const double fswr = FswrUpperStep(2.0, 6.0, spec, 3);
    const double fswor = StepAddRemove(2.0, 6.0, spec.Rate(), 3);
    CHECK(RelDiff(fswr, fswor) < 0.01);
  }
}

TEST_CASE("large batches are dominated by the replacement-count tail") {
  // At |B| = 120, |D| = 50000 the n = |B| component alone carries
  // a~_B H_{2, sigma/B}(q~) = e^{295.6}; the theorem's bound explodes even
  // though alpha = 2.  The lower bound stays small until alpha = 3.
  const SubsamplingSpec spec{120, 50000};
  const double upper = FswrUpperStep(2.0, 6.0, spec, 3);
  CHECK(upper > 290.0);
  CHECK(upper < 300.0);
  const double lower = FswrLowerBound(2, 6.0, 120, 50000, TruncationScheme::Default(2, 120));
  CHECK(lower < 1e-5);
  CHECK(lower <= upper);
  CHECK(FswrLowerBound(3, 6.0, 120, 50000, TruncationScheme::Default(3, 120)) > 100.0);
}

TEST_CASE("worked lower bound: two draws from ten elements") {
  const double eps = FswrLowerBound(2, 6.0, 2, 10, TruncationScheme::Full(2, 2));
  CHECK(RelDiff(eps, 4.748145798871693e-3) < 1e-12);
  CHECK(RelDiff(std::exp(eps), 1.0047594361054031) < 1e-12);
  CHECK(RelDiff(eps, BruteFswrLower(2, 6.0, 2, 10)) < 1e-12);
}

TEST_CASE("lower bound vanishes as sigma grows") {
  CHECK(FswrLowerBound(2, 1e8, 3, 10, TruncationScheme::Full(2, 3)) < 1e-10);
  CHECK(FswrLowerBound(2, 1e8, 3, 10, TruncationScheme::Full(2, 3)) >= 0.0);
}

TEST_CASE("shared-memo evaluator agrees with the one-shot recursion") {
  FswrLowerEvaluator eval = FswrLowerEvaluator::WithDefaultTruncation(6.0, 12, 1200);
  for (int alpha = 2; alpha <= 20; ++alpha) {
    const double one_shot =
        FswrLowerBound(alpha, 6.0, 12, 1200, TruncationScheme::Default(alpha, 12));
    CHECK(eval.Lower(alpha) == one_shot);
  }
  CHECK_THROWS_AS(eval.Lower(1), std::domain_error);
}

TEST_CASE("full truncation matches the brute-force nested sum") {
  for (int batch = 1; batch <= 4; ++batch) {
    for (int alpha = 2; alpha <= 4; ++alpha) {
      for (std::int64_t dataset : {5, 10, 20}) {
        if (dataset <= batch) continue;
        const double rec =
            FswrLowerBound(alpha, 6.0, batch, dataset, TruncationScheme::Full(alpha, batch));
        const double brute = BruteFswrLower(alpha, 6.0, batch, dataset);
        CHECK(RelDiff(rec, brute) < 1e-12);
      }
    }
  }
}

TEST_CASE("enlarging a level set never decreases the lower bound") {
  Rng rng(40812);
  const int batch = 6;
  const std::int64_t dataset = 60;
  for (int trial = 0; trial < 50; ++trial) {
    const int alpha = rng.Int(3, 5);
    TruncationScheme small = TruncationScheme::Default(alpha, batch);
    // Random sparse levels, then a random enlargement.
    TruncationScheme big;
    for (int k = 2; k <= alpha; ++k) {
      std::vector<int> keep;
      for (int n = 0; n <= batch; ++n) {
        if (rng.Uniform() < 0.4) keep.push_back(n);
      }
      if (keep.empty()) keep.push_back(rng.Int(0, batch));
      small.level_sets[k] = keep;
      std::vector<int> more = keep;
      for (int n = 0; n <= batch; ++n) {
        if (rng.Uniform() < 0.4 &&
            std::find(more.begin(), more.end(), n) == more.end()) {
          more.push_back(n);
        }
      }
      std::sort(more.begin(), more.end());
      big.level_sets[k] = more;
    }
    const double lo = FswrLowerBound(alpha, 4.0, batch, dataset, small);
    const double hi = FswrLowerBound(alpha, 4.0, batch, dataset, big);
    const double full =
        FswrLowerBound(alpha, 4.0, batch, dataset, TruncationScheme::Full(alpha, batch));
    CHECK(lo <= hi * (1.0 + 1e-12) + 1e-18);
    CHECK(hi <= full * (1.0 + 1e-12) + 1e-18);
  }
}

TEST_CASE("default truncation sandwich at the working-point parameters") {
  const SubsamplingSpec spec{120, 50000};
  for (int alpha = 2; alpha <= 16; ++alpha) {
    const double lower =
        FswrLowerBound(alpha, 6.0, 120, 50000, TruncationScheme::Default(alpha, 120));
    CHECK(lower <= FswrUpperStep(alpha, 6.0, spec, 3));
  }
}

TEST_CASE("loosened closed form and batch-size monotonicity") {
  const double q = 0.001;
  double prev = -1.0;
  for (int batch : {10, 100, 1000, 10000}) {
    const std::int64_t dataset = static_cast<std::int64_t>(batch / q);
    const double lower =
        FswrLowerBound(2, 6.0, batch, dataset, TruncationScheme::Default(2, batch));
    const double loosened = FswrLowerLoosened(2, 6.0, batch, q);
    CHECK(lower >= loosened - 1e-9 * std::max(1.0, std::fabs(loosened)));
    CHECK(lower >= prev);
    prev = lower;
  }
}

TEST_CASE("general-K form reproduces the theorem at K = |B|") {
  const SubsamplingSpec spec{12, 600};
  const FswrWeights w = FswrWeights::For(12, 600);
  for (double alpha : {2.0, 5.5}) {
    CHECK(RelDiff(FswrUpperStepGeneralK(alpha, 6.0, spec, 3, 12, w.q_tilde),
                  FswrUpperStep(alpha, 6.0, spec, 3)) < 1e-12);
  }
}

TEST_CASE("general-K admissibility") {
  const SubsamplingSpec spec{12, 600};
  // Slack q~ is admissible and gives a valid (weaker or equal) bound.
  const double loose = FswrUpperStepGeneralK(2.0, 6.0, spec, 3, 4, 0.5);
  CHECK(loose >= 0.0);
  // q~ below the K-dependent floor is rejected.
  CHECK_THROWS_AS(FswrUpperStepGeneralK(2.0, 6.0, spec, 3, 4, 1e-6), std::domain_error);
  CHECK_THROWS_AS(FswrUpperStepGeneralK(2.0, 6.0, spec, 3, 0, 0.5), std::domain_error);
  CHECK_THROWS_AS(FswrUpperStepGeneralK(2.0, 6.0, spec, 3, 13, 0.5), std::domain_error);
  CHECK_THROWS_AS(FswrUpperStepGeneralK(2.0, 6.0, spec, 3, 4, 1.5), std::domain_error);
}

TEST_CASE("with-replacement composition") {
  AccountantConfig config;
  config.spec = {8, 20000};
  config.sigmas.assign(5, 6.0);
  config.taylor_order = 3;
  config.adjacency = Adjacency::kAddRemove;
  config.alpha_grid = {2.0, 4.0};
  const RdpCurve curve = ComposeFswr(config);
  CHECK(curve.method == "fswr_upper");
  for (std::size_t i = 0; i < curve.alphas.size(); ++i) {
    CHECK(curve.epsilons[i] == 5.0 * FswrUpperStep(curve.alphas[i], 6.0, config.spec, 3));
  }
  config.adjacency = Adjacency::kReplaceOne;
  CHECK_THROWS_AS(ComposeFswr(config), std::domain_error);
}

TEST_CASE("lower bound preconditions") {
  const TruncationScheme full = TruncationScheme::Full(2, 3);
  CHECK_THROWS_AS(FswrLowerBound(1, 6.0, 3, 10, full), std::domain_error);
  CHECK_THROWS_AS(FswrLowerBound(2, 0.0, 3, 10, full), std::domain_error);
  CHECK_THROWS_AS(FswrLowerBound(2, 6.0, 0, 10, full), std::domain_error);
  CHECK_THROWS_AS(FswrLowerBound(2, 6.0, 3, 1, full), std::domain_error);
  TruncationScheme bad;
  bad.level_sets[2] = {};
  CHECK_THROWS_AS(FswrLowerBound(2, 6.0, 3, 10, bad), std::domain_error);
  bad.level_sets[2] = {0, 5};
  CHECK_THROWS_AS(FswrLowerBound(2, 6.0, 3, 10, bad), std::domain_error);
  bad.level_sets[2] = {2, 1};
  CHECK_THROWS_AS(FswrLowerBound(2, 6.0, 3, 10, bad), std::domain_error);
}

TEST_CASE("upper step requires batch below dataset") {
  CHECK_THROWS_AS(FswrUpperStep(2.0, 6.0, SubsamplingSpec{10, 10}, 3), std::domain_error);
  CHECK_THROWS_AS(FswrUpperStep(2.0, 6.0, SubsamplingSpec{0, 10}, 3), std::domain_error);
}
