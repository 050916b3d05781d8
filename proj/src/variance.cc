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

#include "fsrdp/variance.h"

#include <algorithm>
#include <stdexcept>

namespace fsrdp {
namespace {

void CheckBatch(const Population& pop, std::int64_t batch) {
  if (pop.Size() < 1) throw std::domain_error("population must be non-empty");
  if (batch < 1 || batch > pop.Size()) {
    throw std::domain_error("batch must lie in [1, |D|]");
  }
}

}  // namespace

double Population::Mean() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double Population::MeanSquare() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return s / static_cast<double>(values.size());
}

double VarPoisson(const Population& pop, std::int64_t batch) {
  CheckBatch(pop, batch);
  const double inv_b = 1.0 / static_cast<double>(batch);
  const double inv_d = 1.0 / static_cast<double>(pop.Size());
  return std::max(0.0, (inv_b - inv_d) * pop.MeanSquare());
}

double VarFswor(const Population& pop, std::int64_t batch) {
  CheckBatch(pop, batch);
  const std::int64_t d = pop.Size();
  if (d < 2) throw std::domain_error("VarFswor: |D| >= 2 required");
  const double inv_b = 1.0 / static_cast<double>(batch);
  const double inv_d = 1.0 / static_cast<double>(d);
  const double mean = pop.Mean();
  const double bracket = VarPoisson(pop, batch) - (inv_b - inv_d) * mean * mean;
  return std::max(0.0, (static_cast<double>(d) / (d - 1.0)) * bracket);
}

double VarFswr(const Population& pop, std::int64_t batch) {
  CheckBatch(pop, batch);
  const double mean = pop.Mean();
  return std::max(0.0, (pop.MeanSquare() - mean * mean) / static_cast<double>(batch));
}

VarianceRatios VarianceRatiosOf(const Population& pop, std::int64_t batch) {
  CheckBatch(pop, batch);
  if (VarPoisson(pop, batch) == 0.0) {
    throw std::domain_error("VarianceRatiosOf: Poisson variance is zero");
  }
  if (VarFswor(pop, batch) == 0.0) {
    throw std::domain_error("VarianceRatiosOf: FSwoR variance is zero");
  }
  const double d = static_cast<double>(pop.Size());
  const double q = static_cast<double>(batch) / d;
  VarianceRatios r;
  r.fswor_over_poisson = (1.0 / (1.0 - 1.0 / d)) * (1.0 - pop.Mean() * pop.Mean() / pop.MeanSquare());
  r.fswr_over_fswor = (1.0 - 1.0 / d) / (1.0 - q);
  return r;
}

}  // namespace fsrdp
