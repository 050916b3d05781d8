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

#include "fsrdp/baselines.h"
#include "fsrdp/fswor.h"
#include "fsrdp/oracles.h"
#include "test_util.h"

using namespace fsrdp;
using fsrdp::test::RelDiff;

TEST_CASE("exact integer moment endpoints") {
  CHECK(ExactHInteger(4, 3.3, 0.0) == 1.0);
  // q = 1 is a pure shifted Gaussian; the moment is its MGF value.
  CHECK(RelDiff(ExactHInteger(3, 6.0, 1.0), std::exp(12.0 / 36.0)) < 1e-14);
  CHECK(RelDiff(ExactHInteger(3, 6.0, 1.0), 1.3956124250860895) < 1e-14);
  CHECK(RelDiff(ExactHInteger(2, 6.0, 0.1), 1.0011751906874186) < 1e-14);
}

TEST_CASE("monte carlo on the trivial mixture is exact") {
  const McEstimate est =
      McMixtureRenyi(3.0, PureReference(), PureReference(), 2.0, 10000, 17);
  CHECK(est.value == 1.0);
  CHECK(est.std_error == 0.0);
  CHECK(est.samples == 10000);
}

TEST_CASE("monte carlo reproduces the closed form for the add/remove mixture") {
  const double sigma = 4.0, q = 0.01;
  for (int alpha : {2, 3, 4}) {
    const McEstimate est = McMixtureRenyi(alpha, AddRemoveMixture(q), PureReference(),
                                          sigma / 2.0, 200000, 99 + alpha);
    const double exact = ExactHInteger(alpha, sigma, q);
    CHECK(std::fabs(est.value - exact) <= 3.0 * est.std_error);
    CHECK(est.std_error > 0.0);
  }
}

TEST_CASE("replace-one worst case stays below both replace-one bounds") {
  const double sigma = 6.0, q = 0.01;
  const McEstimate est = McMixtureRenyi(3.0, ReplaceOneNumerator(q), ReplaceOneDenominator(q),
                                        sigma / 2.0, 400000, 4242);
  CHECK(est.value - 3.0 * est.std_error <=
        std::exp(2.0 * StepReplaceOne(3.0, sigma, q, 4)));
  CHECK(est.value - 3.0 * est.std_error <=
        std::exp(2.0 * PoissonReplaceOneStep(3.0, sigma, q, 4)));
}

TEST_CASE("monte carlo is reproducible bit for bit") {
  const McEstimate a =
      McMixtureRenyi(2.5, AddRemoveMixture(0.02), PureReference(), 3.0, 50000, 1234);
  const McEstimate b =
      McMixtureRenyi(2.5, AddRemoveMixture(0.02), PureReference(), 3.0, 50000, 1234);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  const McEstimate c =
      McMixtureRenyi(2.5, AddRemoveMixture(0.02), PureReference(), 3.0, 50000, 1235);
  CHECK(a.value != c.value);
}

TEST_CASE("monte carlo preconditions") {
  CHECK_THROWS_AS(McMixtureRenyi(2.0, AddRemoveMixture(0.1), PureReference(), 2.0, 9999, 1),
                  std::domain_error);
  CHECK_THROWS_AS(McMixtureRenyi(2.0, AddRemoveMixture(0.1), PureReference(), 0.0, 10000, 1),
                  std::domain_error);
  CHECK_THROWS_AS(
      McMixtureRenyi(2.0, MixtureSpec{{0.5, 0.4}, {1.0, 0.0}}, PureReference(), 2.0, 10000, 1),
      std::domain_error);
  CHECK_THROWS_AS(
      McMixtureRenyi(2.0, MixtureSpec{{0.5}, {1.0, 0.0}}, PureReference(), 2.0, 10000, 1),
      std::domain_error);
}

TEST_CASE("without-replacement decomposition on the worked instances") {
  const DecompositionReport five_two = ValidateFsworDecomposition(5, 2);
  CHECK(five_two.exact_match);
  CHECK(five_two.outcomes == 10);  // C(5,2) subsets, each at 1/10
  const DecompositionReport full = ValidateFsworDecomposition(3, 3);
  CHECK(full.exact_match);
  CHECK(full.outcomes == 1);
  const DecompositionReport six_three = ValidateFsworDecomposition(6, 3);
  CHECK(six_three.exact_match);
  CHECK(six_three.outcomes == 20);
}

TEST_CASE("without-replacement decomposition across the full small grid") {
  for (int d = 1; d <= 8; ++d) {
    for (int b = 1; b <= d; ++b) {
      CHECK(ValidateFsworDecomposition(d, b).exact_match);
    }
  }
}

TEST_CASE("with-replacement decomposition on the worked instances") {
  const DecompositionReport three_two = ValidateFswrDecomposition(3, 2);
  CHECK(three_two.exact_match);
  CHECK(three_two.outcomes == 9);  // 3^2 tuples at 1/9
  const DecompositionReport singles = ValidateFswrDecomposition(5, 1);
  CHECK(singles.exact_match);
  CHECK(singles.outcomes == 5);
  const DecompositionReport two_three = ValidateFswrDecomposition(2, 3);
  CHECK(two_three.exact_match);
  CHECK(two_three.outcomes == 8);  // 2^3 tuples at 1/8
}

TEST_CASE("with-replacement decomposition across the full small grid") {
  for (int d = 2; d <= 6; ++d) {
    for (int b = 1; b <= 4; ++b) {
      CHECK(ValidateFswrDecomposition(d, b).exact_match);
    }
  }
}

TEST_CASE("brute-force with-replacement lower bound on the worked instance") {
  CHECK(RelDiff(BruteFswrLower(2, 6.0, 2, 10), 4.748145798871693e-3) < 1e-12);
}

TEST_CASE("brute-force variance cross-check") {
  const Population pop{{1.0, 2.0, 3.0}};
  CHECK(RelDiff(BruteVariance(pop, 2, SamplingMode::kPoisson), 7.0 / 9.0) < 1e-12);
  CHECK(RelDiff(BruteVariance(pop, 2, SamplingMode::kFswor), 1.0 / 6.0) < 1e-12);
  CHECK(RelDiff(BruteVariance(pop, 2, SamplingMode::kFswr), 1.0 / 3.0) < 1e-12);
}

TEST_CASE("oracle preconditions") {
  CHECK_THROWS_AS(ExactHInteger(1, 6.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(ExactHInteger(2, 6.0, 1.1), std::domain_error);
  CHECK_THROWS_AS(ValidateFsworDecomposition(21, 2), std::domain_error);
  CHECK_THROWS_AS(ValidateFswrDecomposition(9, 2), std::domain_error);
  CHECK_THROWS_AS(BruteFswrLower(7, 6.0, 2, 10), std::domain_error);
}
