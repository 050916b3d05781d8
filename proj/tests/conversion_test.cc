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

#include "fsrdp/conversion.h"
#include "fsrdp/fswor.h"
#include "fsrdp/log_space.h"
#include "test_util.h"

using namespace fsrdp;
using fsrdp::test::RelDiff;
using fsrdp::test::Rng;

namespace {

RdpCurve MakeCurve(std::vector<double> alphas, std::vector<double> epsilons) {
  RdpCurve c;
  c.alphas = std::move(alphas);
  c.epsilons = std::move(epsilons);
  c.method = "test";
  return c;
}

}  // namespace

TEST_CASE("single-point classic conversion") {
  const DpGuarantee g = RdpToDp(MakeCurve({2.0}, {1.0}), 1e-5, ConversionVariant::kClassic);
  CHECK(RelDiff(g.epsilon, 12.512925464970228) < 1e-12);
  CHECK(g.alpha_star == 2.0);
  CHECK(g.delta == 1e-5);
}

TEST_CASE("zero curve selects the largest order") {
  std::vector<double> alphas, epsilons;
  for (int a = 2; a <= 10; ++a) {
    alphas.push_back(a);
    epsilons.push_back(0.0);
  }
  const DpGuarantee g = RdpToDp(MakeCurve(alphas, epsilons), 1e-5, ConversionVariant::kClassic);
  CHECK(g.alpha_star == 10.0);
  CHECK(RelDiff(g.epsilon, std::log(1e5) / 9.0) < 1e-12);
}

TEST_CASE("improved variant never loses to classic") {
  Rng rng(5150);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.Int(1, 30);
    std::vector<double> alphas, epsilons;
    double a = 1.0;
    for (int i = 0; i < n; ++i) {
      a += rng.Uniform(0.1, 8.0);
      alphas.push_back(a);
      epsilons.push_back(rng.Uniform(0.0, 3.0));
    }
    const double delta = std::pow(10.0, -rng.Uniform(1.0, 10.0));
    const RdpCurve curve = MakeCurve(alphas, epsilons);
    const double classic = RdpToDp(curve, delta, ConversionVariant::kClassic).epsilon;
    const double improved = RdpToDp(curve, delta, ConversionVariant::kImproved).epsilon;
    CHECK(improved <= classic);
  }
}

TEST_CASE("denser grids can only lower the minimum") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> alphas, epsilons;
    double a = 1.0;
    for (int i = 0; i < 40; ++i) {
      a += rng.Uniform(0.1, 2.0);
      alphas.push_back(a);
      epsilons.push_back(rng.Uniform(0.0, 2.0));
    }
    std::vector<double> coarse_a, coarse_e;
    for (std::size_t i = 0; i < alphas.size(); i += 2) {
      coarse_a.push_back(alphas[i]);
      coarse_e.push_back(epsilons[i]);
    }
    const double delta = 1e-6;
    for (ConversionVariant v : {ConversionVariant::kClassic, ConversionVariant::kImproved}) {
      CHECK(RdpToDp(MakeCurve(alphas, epsilons), delta, v).epsilon <=
            RdpToDp(MakeCurve(coarse_a, coarse_e), delta, v).epsilon);
    }
  }
}

TEST_CASE("infinite points are skipped; an all-infinite curve converts to infinity") {
  const DpGuarantee skip =
      RdpToDp(MakeCurve({2.0, 3.0}, {kPosInf, 1.0}), 1e-5, ConversionVariant::kClassic);
  CHECK(skip.alpha_star == 3.0);
  CHECK(RelDiff(skip.epsilon, 1.0 + std::log(1e5) / 2.0) < 1e-12);
  const DpGuarantee all_inf =
      RdpToDp(MakeCurve({2.0, 3.0}, {kPosInf, kPosInf}), 1e-5, ConversionVariant::kClassic);
  CHECK(std::isinf(all_inf.epsilon));
}

TEST_CASE("ties break toward the smaller order") {
  // delta = 0.25: both candidates equal log(4) exactly (doubling is exact).
  const double log4 = std::log(4.0);
  const DpGuarantee g =
      RdpToDp(MakeCurve({2.0, 3.0}, {0.0, log4 / 2.0}), 0.25, ConversionVariant::kClassic);
  CHECK(g.alpha_star == 2.0);
}

TEST_CASE("epsilon clamps at zero") {
  const DpGuarantee g = RdpToDp(MakeCurve({2.0}, {0.0}), 0.9, ConversionVariant::kImproved);
  CHECK(g.epsilon == 0.0);
}

TEST_CASE("guarantees grow as delta shrinks") {
  // 1000 composed replace-one steps at the working-point parameters.
  AccountantConfig config;
  config.spec = {120, 50000};
  config.sigmas.assign(1000, 6.0);
  config.taylor_order = 4;
  config.adjacency = Adjacency::kReplaceOne;
  config.alpha_grid = DefaultAlphaGrid();
  const RdpCurve curve = Compose(config);
  for (ConversionVariant v : {ConversionVariant::kClassic, ConversionVariant::kImproved}) {
    double prev = -1.0;
    for (int e = 4; e <= 10; ++e) {
      const double eps = RdpToDp(curve, std::pow(10.0, -e), v).epsilon;
      CHECK(std::isfinite(eps));
      CHECK(eps > prev);
      prev = eps;
    }
  }
}

TEST_CASE("approximate epsilon relation is exactly scale-invariant") {
  const double delta = 1e-5;
  for (double r : {1e-9, 2.73e-4, 0.125, 7.0}) {
    CHECK(EpsApprox(4.0 * r, delta) == 2.0 * EpsApprox(r, delta));
  }
}

TEST_CASE("approximate epsilon with matched factors") {
  const double delta = 1e-6;
  const double l = std::log(1.0 / delta);
  CHECK(RelDiff(EpsApprox(l, delta), 2.0 * l) < 1e-15);
  CHECK(EpsApprox(0.0, delta) == 0.0);
  CHECK(EpsApprox(1e-300, delta) < 1e-140);
}

TEST_CASE("conversion preconditions") {
  CHECK_THROWS_AS(RdpToDp(RdpCurve{}, 1e-5, ConversionVariant::kClassic), std::domain_error);
  CHECK_THROWS_AS(RdpToDp(MakeCurve({2.0}, {1.0}), 0.0, ConversionVariant::kClassic),
                  std::domain_error);
  CHECK_THROWS_AS(RdpToDp(MakeCurve({2.0}, {1.0}), 1.0, ConversionVariant::kClassic),
                  std::domain_error);
  CHECK_THROWS_AS(EpsApprox(-1.0, 1e-5), std::domain_error);
  CHECK_THROWS_AS(EpsApprox(1.0, 1.5), std::domain_error);
}

TEST_CASE("variant names") {
  CHECK(ToString(ConversionVariant::kClassic) == "classic");
  CHECK(ToString(ConversionVariant::kImproved) == "improved");
}
