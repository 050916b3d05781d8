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

#ifndef FSRDP_VARIANCE_H_
#define FSRDP_VARIANCE_H_

#include <cstdint>
#include <vector>

namespace fsrdp {

// Per-sample projected gradients a_1..a_|D| and their first two moments.
struct Population {
  std::vector<double> values;

  std::int64_t Size() const { return static_cast<std::int64_t>(values.size()); }
  double Mean() const;
  double MeanSquare() const;
};

// Variance of the minibatch-mean gradient estimator under the three
// subsampling schemes, |B| = batch:
//   Poisson:            (1/|B| - 1/|D|) * mean-square
//   fixed, w/o repl.:   |D|/(|D|-1) * (poisson - (1/|B| - 1/|D|) * mean^2)
//   fixed, w/ repl.:    (mean-square - mean^2)/|B|
//                       = (1 - 1/|D|)/(1 - q) * fswor variance
// All are clamped at zero against rounding.  FSwoR requires |D| >= 2.
double VarPoisson(const Population& pop, std::int64_t batch);
double VarFswor(const Population& pop, std::int64_t batch);
double VarFswr(const Population& pop, std::int64_t batch);

struct VarianceRatios {
  double fswor_over_poisson = 0.0;  // (1/(1-1/|D|)) (1 - mean^2/mean-square)
  double fswr_over_fswor = 0.0;     // (1-1/|D|)/(1-q)
};

// Throws std::domain_error when the respective denominator variance is zero.
VarianceRatios VarianceRatiosOf(const Population& pop, std::int64_t batch);

}  // namespace fsrdp

#endif  // FSRDP_VARIANCE_H_
