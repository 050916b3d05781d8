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

#include "fsrdp/selfcheck.h"

#include <cmath>
#include <sstream>

#include "fsrdp/baselines.h"
#include "fsrdp/conversion.h"
#include "fsrdp/fswor.h"
#include "fsrdp/fswr.h"
#include "fsrdp/log_space.h"
#include "fsrdp/oracles.h"
#include "fsrdp/variance.h"

namespace fsrdp {
namespace {

constexpr double kFigSigma = 6.0;
constexpr std::int64_t kFigBatch = 120;
constexpr std::int64_t kFigDataset = 50000;

bool RelClose(double a, double b, double tol) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  if (scale == 0.0) return true;
  return std::fabs(a - b) <= tol * scale;
}

CheckResult FactorFourCheck() {
  CheckResult r{"factor4_leading_order", false, ""};
  const double q = 1e-4;
  const double ratio =
      WangUpperStep(2.0, kFigSigma, q) / StepAddRemove(2.0, kFigSigma, q, 3);
  std::ostringstream d;
  d << "wang_upper/fswor_ar ratio at alpha=2, q=1e-4: " << ratio;
  r.detail = d.str();
  r.pass = ratio >= 3.96 && ratio <= 4.04;
  return r;
}

CheckResult ReplaceOneOrderingCheck() {
  CheckResult r{"replace_one_ordering", true, ""};
  const double q = static_cast<double>(kFigBatch) / kFigDataset;
  for (int alpha = 2; alpha <= 64; ++alpha) {
    const double lower = WangLowerStep(alpha, kFigSigma, q);
    const double ours = StepReplaceOne(alpha, kFigSigma, q, 4);
    const double upper = WangUpperStep(alpha, kFigSigma, q);
    if (!(lower <= ours && ours <= upper)) {
      std::ostringstream d;
      d << "ordering violated at alpha=" << alpha << ": " << lower << " / " << ours << " / "
        << upper;
      return {r.name, false, d.str()};
    }
    if (alpha <= 32 && !(ours - lower <= 0.25 * (upper - lower))) {
      std::ostringstream d;
      d << "gap band violated at alpha=" << alpha;
      return {r.name, false, d.str()};
    }
  }
  r.detail = "wang_lower <= fswor_ro(m=4) <= wang_upper on alpha in [2,64]";
  return r;
}

CheckResult PoissonOrderingCheck() {
  CheckResult r{"poisson_ro_below_wang_lower", true, ""};
  const double q = static_cast<double>(kFigBatch) / kFigDataset;
  for (int alpha = 2; alpha <= 64; ++alpha) {
    const double poisson = PoissonReplaceOneStep(alpha, kFigSigma, q, 4);
    const double lower = WangLowerStep(alpha, kFigSigma, q);
    if (!(poisson <= lower)) {
      std::ostringstream d;
      d << "poisson_ro above wang_lower at alpha=" << alpha << ": " << poisson << " vs "
        << lower;
      return {r.name, false, d.str()};
    }
  }
  r.detail = "poisson_ro(m=4) <= wang_lower on alpha in [2,64]";
  return r;
}

CheckResult IntegerExactnessCheck() {
  CheckResult r{"integer_alpha_exactness", true, ""};
  for (int alpha = 2; alpha <= 8; ++alpha) {
    for (double sigma : {2.0, 4.0, 6.0}) {
      for (double q : {1e-3, 1e-2}) {
        const double bound = HUpper(alpha, sigma, q, alpha + 1).value;
        const double exact = ExactHInteger(alpha, sigma, q);
        if (!RelClose(bound, exact, 1e-12)) {
          std::ostringstream d;
          d << "mismatch at alpha=" << alpha << " sigma=" << sigma << " q=" << q << ": "
            << bound << " vs " << exact;
          return {r.name, false, d.str()};
        }
      }
    }
  }
  r.detail = "HUpper(m=alpha+1) equals the binomial closed form to 1e-12";
  return r;
}

CheckResult McSoundnessCheck(std::uint64_t seed) {
  CheckResult r{"mc_soundness", true, ""};
  const double sigma = 4.0, q = 0.01;
  const std::int64_t samples = 1000000;
  for (int alpha = 2; alpha <= 6; ++alpha) {
    const McEstimate h =
        McMixtureRenyi(alpha, AddRemoveMixture(q), PureReference(), sigma / 2.0, samples, seed + alpha);
    const double exact = ExactHInteger(alpha, sigma, q);
    if (std::fabs(h.value - exact) > 3.0 * h.std_error) {
      std::ostringstream d;
      d << "add/remove estimate off closed form at alpha=" << alpha << ": " << h.value
        << " vs " << exact << " (se " << h.std_error << ")";
      return {r.name, false, d.str()};
    }
    if (h.value - 3.0 * h.std_error > HUpper(alpha, sigma, q, 3).value) {
      std::ostringstream d;
      d << "add/remove estimate above HUpper at alpha=" << alpha;
      return {r.name, false, d.str()};
    }
    const McEstimate f = McMixtureRenyi(alpha, ReplaceOneNumerator(q), ReplaceOneDenominator(q),
                                        sigma / 2.0, samples, seed + 100 + alpha);
    const double ro_bound = std::exp((alpha - 1.0) * StepReplaceOne(alpha, sigma, q, 4));
    const double poisson_bound =
        std::exp((alpha - 1.0) * PoissonReplaceOneStep(alpha, sigma, q, 4));
    if (f.value - 3.0 * f.std_error > ro_bound ||
        f.value - 3.0 * f.std_error > poisson_bound) {
      std::ostringstream d;
      d << "replace-one estimate above bound at alpha=" << alpha << ": " << f.value
        << " (se " << f.std_error << ") vs " << ro_bound << " / " << poisson_bound;
      return {r.name, false, d.str()};
    }
  }
  r.detail = "1e6-sample estimates consistent with closed forms and below all bounds";
  return r;
}

CheckResult FswrSandwichCheck() {
  CheckResult r{"fswr_sandwich", true, ""};
  const SubsamplingSpec spec{kFigBatch, kFigDataset};
  for (int alpha = 2; alpha <= 16; ++alpha) {
    const double lower = FswrLowerBound(alpha, kFigSigma, kFigBatch, kFigDataset,
                                        TruncationScheme::Default(alpha, kFigBatch));
    const double upper = FswrUpperStep(alpha, kFigSigma, spec, 3);
    if (!(lower <= upper)) {
      std::ostringstream d;
      d << "lower above upper at alpha=" << alpha << ": " << lower << " vs " << upper;
      return {r.name, false, d.str()};
    }
  }
  for (int batch : {1, 2, 3, 4}) {
    for (int alpha = 2; alpha <= 4; ++alpha) {
      for (std::int64_t dataset : {5, 10, 20}) {
        if (dataset <= batch) continue;
        const double fast = FswrLowerBound(alpha, kFigSigma, batch, dataset,
                                           TruncationScheme::Full(alpha, batch));
        const double brute = BruteFswrLower(alpha, kFigSigma, batch, dataset);
        if (!RelClose(fast, brute, 1e-12)) {
          std::ostringstream d;
          d << "recursion/brute mismatch at alpha=" << alpha << " B=" << batch
            << " N=" << dataset << ": " << fast << " vs " << brute;
          return {r.name, false, d.str()};
        }
      }
    }
  }
  r.detail = "lower <= upper on alpha in [2,16]; full recursion matches brute force";
  return r;
}

CheckResult FswrLoosenedCheck() {
  CheckResult r{"fswr_loosened_and_monotone", true, ""};
  const double q = 0.001;
  double prev = -kPosInf;
  for (int batch : {10, 100, 1000}) {
    const std::int64_t dataset = static_cast<std::int64_t>(batch / q);
    const double lower = FswrLowerBound(2, kFigSigma, batch, dataset,
                                        TruncationScheme::Default(2, batch));
    const double loosened = FswrLowerLoosened(2, kFigSigma, batch, q);
    // At large |B| the diagonal term dominates and the two sides agree to
    // far below double resolution; compare up to rounding.
    const double slack = 1e-9 * std::max(1.0, std::fabs(loosened));
    if (!(lower >= loosened - slack)) {
      std::ostringstream d;
      d << "lower bound below its loosened form at B=" << batch << ": " << lower << " vs "
        << loosened;
      return {r.name, false, d.str()};
    }
    if (!(lower >= prev)) {
      std::ostringstream d;
      d << "lower bound not monotone in B at B=" << batch;
      return {r.name, false, d.str()};
    }
    prev = lower;
  }
  r.detail = "lower >= loosened closed form and non-decreasing over B in {10,100,1000}";
  return r;
}

CheckResult LemmaCheck() {
  CheckResult r{"lemma_decompositions", true, ""};
  for (int d = 1; d <= 8; ++d) {
    for (int b = 1; b <= d; ++b) {
      const DecompositionReport rep = ValidateFsworDecomposition(d, b);
      if (!rep.exact_match) {
        return {r.name, false, "fswor decomposition: " + rep.detail};
      }
    }
  }
  for (int d = 2; d <= 6; ++d) {
    for (int b = 1; b <= 4; ++b) {
      const DecompositionReport rep = ValidateFswrDecomposition(d, b);
      if (!rep.exact_match) {
        return {r.name, false, "fswr decomposition: " + rep.detail};
      }
    }
  }
  r.detail = "both sampling decompositions exactly uniform on all small instances";
  return r;
}

CheckResult VarianceCheck() {
  CheckResult r{"variance_algebra", true, ""};
  const Population worked{{1.0, 2.0, 3.0}};
  if (!RelClose(VarPoisson(worked, 2), 7.0 / 9.0, 1e-12) ||
      !RelClose(VarFswor(worked, 2), 1.0 / 6.0, 1e-12) ||
      !RelClose(VarFswr(worked, 2), 1.0 / 3.0, 1e-12)) {
    return {r.name, false, "worked population [1,2,3], B=2 mismatch"};
  }
  // Deterministic 50-case grid of small populations.
  std::uint64_t state = 0x9E3779B97F4A7C15ull;
  int cases = 0;
  while (cases < 50) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    const int d = 2 + static_cast<int>(state % 5);  // 2..6
    Population pop;
    for (int i = 0; i < d; ++i) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      pop.values.push_back(static_cast<double>(static_cast<std::int64_t>(state % 2001) - 1000) /
                           100.0);
    }
    for (std::int64_t b = 1; b <= d; ++b) {
      ++cases;
      if (!RelClose(VarPoisson(pop, b), BruteVariance(pop, b, SamplingMode::kPoisson), 1e-12) ||
          !RelClose(VarFswor(pop, b), BruteVariance(pop, b, SamplingMode::kFswor), 1e-12) ||
          !RelClose(VarFswr(pop, b), BruteVariance(pop, b, SamplingMode::kFswr), 1e-12)) {
        std::ostringstream det;
        det << "closed form vs enumeration mismatch on case " << cases;
        return {r.name, false, det.str()};
      }
    }
  }
  r.detail = "closed forms match exhaustive enumeration on the 50-case grid";
  return r;
}

CheckResult ConversionCheck() {
  CheckResult r{"conversion_ordering", true, ""};
  AccountantConfig config;
  config.spec = {kFigBatch, kFigDataset};
  const std::int64_t steps_per_epoch = (kFigDataset + kFigBatch - 1) / kFigBatch;
  config.sigmas.assign(250 * steps_per_epoch, kFigSigma);
  config.adjacency = Adjacency::kReplaceOne;
  config.alpha_grid = DefaultAlphaGrid();

  config.taylor_order = 4;
  const RdpCurve ours_m4 = Compose(config);
  config.taylor_order = 5;
  const RdpCurve ours_m5 = Compose(config);
  config.taylor_order = 4;
  const double q = config.spec.Rate();
  const RdpCurve wang = ComposeSteps(config, "wang_upper", [q](double alpha, double sigma) {
    return WangUpperStep(alpha, sigma, q);
  });

  for (int e = 4; e <= 10; ++e) {
    const double delta = std::pow(10.0, -e);
    const DpGuarantee a = RdpToDp(ours_m4, delta, ConversionVariant::kImproved);
    const DpGuarantee b = RdpToDp(ours_m5, delta, ConversionVariant::kImproved);
    const DpGuarantee w = RdpToDp(wang, delta, ConversionVariant::kImproved);
    if (!(a.epsilon < w.epsilon)) {
      std::ostringstream d;
      d << "converted fswor_ro not below wang_upper at delta=1e-" << e;
      return {r.name, false, d.str()};
    }
    if (!RelClose(a.epsilon, b.epsilon, 1e-2)) {
      std::ostringstream d;
      d << "m=4 and m=5 conversions differ beyond 1e-2 at delta=1e-" << e;
      return {r.name, false, d.str()};
    }
  }
  r.detail = "improved conversion: fswor_ro(m=4) below wang_upper; m=4 ~ m=5";
  return r;
}

CheckResult EpsApproxCheck() {
  CheckResult r{"eps_approx_relation", true, ""};
  const double delta = 1e-5;
  for (double rp : {1e-6, 3.7e-4, 0.25}) {
    if (EpsApprox(4.0 * rp, delta) != 2.0 * EpsApprox(rp, delta)) {
      return {r.name, false, "quadrupling R did not exactly double the output"};
    }
  }
  r.detail = "eps(4R) is exactly twice eps(R)";
  return r;
}

}  // namespace

std::vector<CheckResult> RunSelfChecks(std::uint64_t seed) {
  std::vector<CheckResult> results;
  results.push_back(FactorFourCheck());
  results.push_back(ReplaceOneOrderingCheck());
  results.push_back(PoissonOrderingCheck());
  results.push_back(IntegerExactnessCheck());
  results.push_back(McSoundnessCheck(seed));
  results.push_back(FswrSandwichCheck());
  results.push_back(FswrLoosenedCheck());
  results.push_back(LemmaCheck());
  results.push_back(VarianceCheck());
  results.push_back(ConversionCheck());
  results.push_back(EpsApproxCheck());
  return results;
}

}  // namespace fsrdp
