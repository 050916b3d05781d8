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

#include "fsrdp/types.h"

#include <algorithm>
#include <stdexcept>

namespace fsrdp {

void SubsamplingSpec::Validate() const {
  if (batch < 1) throw std::domain_error("SubsamplingSpec: batch must be >= 1");
  if (dataset <= batch) {
    throw std::domain_error("SubsamplingSpec: dataset must exceed batch (q < 1)");
  }
}

int DefaultTaylorOrder(Adjacency adjacency) {
  return adjacency == Adjacency::kAddRemove ? 3 : 4;
}

void AccountantConfig::Validate() const {
  spec.Validate();
  if (sigmas.empty()) throw std::domain_error("AccountantConfig: at least one step required");
  for (double s : sigmas) {
    if (!(s > 0.0)) throw std::domain_error("AccountantConfig: sigma must be positive");
  }
  if (taylor_order < 3) throw std::domain_error("AccountantConfig: taylor_order must be >= 3");
  ValidateAlphaGrid(alpha_grid);
}

std::vector<double> DefaultAlphaGrid() {
  std::vector<double> grid;
  grid.reserve(99 + 255);
  for (int x = 1; x <= 99; ++x) grid.push_back(1.0 + x / 10.0);
  for (int a = 2; a <= 256; ++a) grid.push_back(static_cast<double>(a));
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

void ValidateAlphaGrid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::domain_error("alpha grid must be non-empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 1.0)) throw std::domain_error("alpha grid entries must be > 1");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::domain_error("alpha grid must be strictly increasing");
    }
  }
}

}  // namespace fsrdp
