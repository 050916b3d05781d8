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

#ifndef FSRDP_CLI_H_
#define FSRDP_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace fsrdp {

// CSV number formatting: 12 significant digits.
std::string FormatCsvDouble(double v);

// "default", or a comma-separated mix of plain values and lo:hi:step ranges
// (inclusive endpoints).  The result is sorted, deduplicated, all > 1.
std::vector<double> ParseAlphaGridSpec(const std::string& spec);

std::vector<double> ParseDoubleList(const std::string& text);

// Entry point behind main().  args excludes the program name.
// Exit codes: 0 success, 1 domain/usage error, 2 validation failure.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fsrdp

#endif  // FSRDP_CLI_H_
