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

#ifndef FSRDP_TYPES_H_
#define FSRDP_TYPES_H_

#include <cstdint>
#include <string>
#include <vector>

namespace fsrdp {

// Minibatch/dataset sizes and the derived sampling rate q = |B|/|D|.
// Every subsampling bound lives in the regime 1 <= |B| < |D|, i.e. q < 1.
struct SubsamplingSpec {
  std::int64_t batch = 0;
  std::int64_t dataset = 0;

  double Rate() const { return static_cast<double>(batch) / static_cast<double>(dataset); }
  void Validate() const;  // throws std::domain_error
};

enum class Adjacency { kAddRemove, kReplaceOne };

// Default Taylor truncation order: 3 suffices under add/remove adjacency,
// replace-one needs 4 for comparable accuracy.
int DefaultTaylorOrder(Adjacency adjacency);

// Per-run accountant parameters.  Clipping threshold and learning rate do
// not appear: they cancel out of the one-dimensional reduction, leaving the
// noise multiplier sigma_t as the only noise parameter.
struct AccountantConfig {
  SubsamplingSpec spec;
  std::vector<double> sigmas;  // one noise multiplier per step; length T >= 1
  int taylor_order = 0;        // m >= 3
  Adjacency adjacency = Adjacency::kAddRemove;
  std::vector<double> alpha_grid;  // strictly increasing, all > 1

  std::size_t Steps() const { return sigmas.size(); }
  void Validate() const;  // throws std::domain_error
};

// An RDP curve: Renyi order alpha -> epsilon bound, with strictly increasing
// alphas.  +inf epsilons are permitted and mean "no finite bound here".
struct RdpCurve {
  std::vector<double> alphas;
  std::vector<double> epsilons;
  std::string method;  // e.g. "fswor_ro"
  std::string config;  // short parameter echo

  bool Empty() const { return alphas.empty(); }
};

// 1.1, 1.2, ..., 10.9 joined with the integers 2..256; the usual working
// range for DP-SGD accounting.
std::vector<double> DefaultAlphaGrid();

// Validates an explicit grid: non-empty, all > 1, strictly increasing.
void ValidateAlphaGrid(const std::vector<double>& grid);

}  // namespace fsrdp

#endif  // FSRDP_TYPES_H_
