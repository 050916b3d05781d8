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

#include "fsrdp/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "fsrdp/baselines.h"
#include "fsrdp/conversion.h"
#include "fsrdp/fswor.h"
#include "fsrdp/fswr.h"
#include "fsrdp/numeric.h"
#include "fsrdp/selfcheck.h"
#include "fsrdp/types.h"
#include "fsrdp/variance.h"

namespace fsrdp {
namespace {

constexpr std::uint64_t kDefaultSeed = 20260810;

std::string Trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double ParseDouble(const std::string& token) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw std::domain_error("not a number: '" + token + "'");
  }
  if (used != token.size()) throw std::domain_error("not a number: '" + token + "'");
  return v;
}

std::vector<std::string> SplitCommaList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    token = Trim(token);
    if (!token.empty()) out.push_back(token);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Method registry

enum class Method { kFsworAr, kFsworRo, kFswrUpper, kFswrLower, kPoissonRo, kWangUpper, kWangLower };

struct MethodInfo {
  Method method;
  bool integer_alpha_only;
  bool single_step_only;  // no T-step composition exists for this bound
  int default_m;          // 0: the method takes no Taylor order
};

const std::map<std::string, MethodInfo>& MethodRegistry() {
  static const std::map<std::string, MethodInfo> registry = {
      {"fswor_ar", {Method::kFsworAr, false, false, 3}},
      {"fswor_ro", {Method::kFsworRo, false, false, 4}},
      {"fswr_upper", {Method::kFswrUpper, false, false, 3}},
      {"fswr_lower", {Method::kFswrLower, true, true, 0}},
      {"poisson_ro", {Method::kPoissonRo, false, false, 4}},
      {"wang_upper", {Method::kWangUpper, false, false, 0}},
      {"wang_lower", {Method::kWangLower, true, false, 0}},
  };
  return registry;
}

// ---------------------------------------------------------------------------
// Shared request state

struct Request {
  std::string methods_flag;
  double sigma = 0.0;
  std::string sigma_file;
  std::int64_t batch = 0;
  std::int64_t dataset = 0;
  std::int64_t steps = -1;   // -1: not given
  std::int64_t epochs = -1;  // -1: not given
  int m = 0;                 // 0: per-method default
  std::string adjacency;     // add-remove | replace-one
  std::string mode;          // fswor | fswr | poisson
  std::string alpha_grid = "default";
  std::string deltas = "1e-4,1e-5,1e-6,1e-7,1e-8,1e-9,1e-10";
  std::string variant = "improved";
  std::string out_path;
  std::uint64_t seed = kDefaultSeed;
  std::string population_file;
};

void AddCurveOptions(CLI::App* cmd, Request* req, bool needs_method) {
  cmd->add_option("--method", req->methods_flag,
                  "comma list of {fswor_ar, fswor_ro, fswr_upper, fswr_lower, poisson_ro, "
                  "wang_upper, wang_lower}");
  cmd->add_option("--sigma", req->sigma, "constant noise multiplier");
  cmd->add_option("--sigma-file", req->sigma_file, "per-step noise multipliers, one per line");
  cmd->add_option("--batch", req->batch, "minibatch size |B|")->required();
  cmd->add_option("--dataset", req->dataset, "dataset size |D|")->required();
  cmd->add_option("--steps", req->steps, "number of composed steps T");
  cmd->add_option("--epochs", req->epochs, "epochs; T = epochs * ceil(|D|/|B|)");
  cmd->add_option("--m", req->m, "Taylor order (>= 3); default 3 add/remove, 4 replace-one");
  cmd->add_option("--adjacency", req->adjacency, "add-remove | replace-one")
      ->check(CLI::IsMember({"add-remove", "replace-one"}));
  cmd->add_option("--mode", req->mode, "fswor | fswr | poisson")
      ->check(CLI::IsMember({"fswor", "fswr", "poisson"}));
  cmd->add_option("--alpha-grid", req->alpha_grid,
                  "'default', or comma list of values and lo:hi:step ranges");
  cmd->add_option("--out", req->out_path, "write CSV here instead of stdout");
  cmd->add_option("--seed", req->seed, "Monte-Carlo seed");
  (void)needs_method;
}

std::vector<std::string> ResolveMethods(const Request& req) {
  if (!req.methods_flag.empty()) {
    std::vector<std::string> methods = SplitCommaList(req.methods_flag);
    if (methods.empty()) throw std::domain_error("--method list is empty");
    for (const std::string& name : methods) {
      if (MethodRegistry().find(name) == MethodRegistry().end()) {
        throw std::domain_error("unknown method '" + name + "'");
      }
    }
    return methods;
  }
  // Derive a single method from mode + adjacency.
  const std::string mode = req.mode.empty() ? "fswor" : req.mode;
  const std::string adjacency = req.adjacency.empty() ? "add-remove" : req.adjacency;
  if (mode == "fswor") return {adjacency == "add-remove" ? "fswor_ar" : "fswor_ro"};
  if (mode == "fswr") {
    if (adjacency == "replace-one") {
      throw std::domain_error("no replace-one bound exists for with-replacement sampling");
    }
    return {"fswr_upper"};
  }
  if (adjacency != "replace-one") {
    throw std::domain_error("Poisson subsampling is provided under replace-one adjacency only");
  }
  return {"poisson_ro"};
}

std::vector<double> ResolveSigmas(const Request& req, std::int64_t steps) {
  std::vector<double> sigmas;
  if (!req.sigma_file.empty()) {
    if (req.sigma != 0.0) throw std::domain_error("--sigma and --sigma-file are exclusive");
    std::ifstream in(req.sigma_file);
    if (!in) throw std::domain_error("cannot open sigma file '" + req.sigma_file + "'");
    std::string line;
    while (std::getline(in, line)) {
      line = Trim(line);
      if (line.empty()) continue;
      sigmas.push_back(ParseDouble(line));
    }
    if (sigmas.empty()) throw std::domain_error("sigma file is empty");
  } else {
    if (!(req.sigma > 0.0)) throw std::domain_error("--sigma must be positive");
    sigmas.assign(static_cast<std::size_t>(steps), req.sigma);
  }
  for (double s : sigmas) {
    if (!(s > 0.0)) throw std::domain_error("every sigma must be positive");
  }
  return sigmas;
}

std::int64_t ResolveSteps(const Request& req) {
  if (!req.sigma_file.empty()) {
    if (req.steps >= 0 || req.epochs >= 0) {
      throw std::domain_error("--sigma-file fixes T; do not combine with --steps/--epochs");
    }
    return -1;  // determined by the file
  }
  if (req.steps >= 0 && req.epochs >= 0) {
    throw std::domain_error("--steps and --epochs are exclusive");
  }
  if (req.steps >= 0) {
    if (req.steps == 0) throw std::domain_error("--steps must be >= 1");
    return req.steps;
  }
  if (req.epochs >= 0) {
    if (req.epochs == 0) throw std::domain_error("--epochs must be >= 1");
    const std::int64_t per_epoch = (req.dataset + req.batch - 1) / req.batch;
    return req.epochs * per_epoch;
  }
  return 1;
}

struct ResolvedRequest {
  SubsamplingSpec spec;
  std::vector<double> sigmas;
  std::vector<double> alpha_grid;
  std::vector<std::string> methods;
};

ResolvedRequest Resolve(const Request& req) {
  ResolvedRequest r;
  r.spec = SubsamplingSpec{req.batch, req.dataset};
  r.spec.Validate();
  const std::int64_t steps = ResolveSteps(req);
  r.sigmas = ResolveSigmas(req, steps);
  r.alpha_grid = ParseAlphaGridSpec(req.alpha_grid);
  r.methods = ResolveMethods(req);
  if (req.m != 0 && req.m < 3) throw std::domain_error("--m must be >= 3");
  return r;
}

std::vector<double> IntegerAlphas(const std::vector<double>& grid) {
  std::vector<double> out;
  for (double a : grid) {
    if (IsInteger(a) && a >= 2.0) out.push_back(a);
  }
  return out;
}

// Computes one method's curve.  For fswr_lower the bound is a single-step
// quantity (no composition theorem backs summing it), so its rows always
// report steps = 1; `steps_used` reports what the epsilon column contains.
RdpCurve ComputeCurve(const std::string& name, const Request& req, const ResolvedRequest& r,
                      int* m_used, std::int64_t* steps_used) {
  const MethodInfo& info = MethodRegistry().at(name);
  const int m = info.default_m == 0 ? 0 : (req.m != 0 ? req.m : info.default_m);
  *m_used = m;
  *steps_used = static_cast<std::int64_t>(r.sigmas.size());

  AccountantConfig config;
  config.spec = r.spec;
  config.sigmas = r.sigmas;
  config.taylor_order = m == 0 ? 3 : m;  // placeholder for m-less methods
  config.alpha_grid = info.integer_alpha_only ? IntegerAlphas(r.alpha_grid) : r.alpha_grid;
  if (config.alpha_grid.empty()) {
    throw std::domain_error("method '" + name + "' needs integer alphas >= 2 in the grid");
  }
  const double q = r.spec.Rate();
  const SubsamplingSpec spec = r.spec;

  switch (info.method) {
    case Method::kFsworAr:
      config.adjacency = Adjacency::kAddRemove;
      return Compose(config);
    case Method::kFsworRo:
      config.adjacency = Adjacency::kReplaceOne;
      return Compose(config);
    case Method::kFswrUpper:
      config.adjacency = Adjacency::kAddRemove;
      return ComposeFswr(config);
    case Method::kPoissonRo:
      return ComposeSteps(config, name, [q, m](double alpha, double sigma) {
        return PoissonReplaceOneStep(alpha, sigma, q, m);
      });
    case Method::kWangUpper:
      return ComposeSteps(config, name, [q](double alpha, double sigma) {
        return WangUpperStep(alpha, sigma, q);
      });
    case Method::kWangLower:
      return ComposeSteps(config, name, [q](double alpha, double sigma) {
        return WangLowerStep(static_cast<int>(alpha), sigma, q);
      });
    case Method::kFswrLower: {
      bool constant = true;
      for (double s : r.sigmas) constant = constant && s == r.sigmas.front();
      if (!constant) throw std::domain_error("fswr_lower requires a constant sigma");
      *steps_used = 1;
      RdpCurve curve;
      curve.method = name;
      curve.alphas = config.alpha_grid;
      const int batch = static_cast<int>(spec.batch);
      FswrLowerEvaluator eval =
          FswrLowerEvaluator::WithDefaultTruncation(r.sigmas.front(), batch, spec.dataset);
      for (double a : curve.alphas) {
        curve.epsilons.push_back(eval.Lower(static_cast<int>(a)));
      }
      return curve;
    }
  }
  throw std::logic_error("unreachable");
}

void WriteOutput(const Request& req, const std::string& csv, std::ostream& out) {
  if (req.out_path.empty()) {
    out << csv;
    return;
  }
  std::ofstream file(req.out_path, std::ios::binary);
  if (!file) throw std::domain_error("cannot open output file '" + req.out_path + "'");
  file << csv;
}

// ---------------------------------------------------------------------------
// Subcommands

int RunCurve(const Request& req, std::ostream& out) {
  const ResolvedRequest r = Resolve(req);
  std::ostringstream csv;
  csv << "method,alpha,epsilon,m,sigma,q,B,D,steps\n";
  std::vector<std::string> methods = r.methods;
  std::sort(methods.begin(), methods.end());
  for (const std::string& name : methods) {
    int m_used = 0;
    std::int64_t steps_used = 0;
    const RdpCurve curve = ComputeCurve(name, req, r, &m_used, &steps_used);
    for (std::size_t i = 0; i < curve.alphas.size(); ++i) {
      csv << name << ',' << FormatCsvDouble(curve.alphas[i]) << ','
          << FormatCsvDouble(curve.epsilons[i]) << ',' << m_used << ','
          << FormatCsvDouble(r.sigmas.front()) << ',' << FormatCsvDouble(r.spec.Rate()) << ','
          << r.spec.batch << ',' << r.spec.dataset << ',' << steps_used << '\n';
    }
  }
  WriteOutput(req, csv.str(), out);
  return 0;
}

int RunConvert(const Request& req, std::ostream& out) {
  const ResolvedRequest r = Resolve(req);
  const ConversionVariant variant =
      req.variant == "classic" ? ConversionVariant::kClassic : ConversionVariant::kImproved;
  std::vector<double> deltas = ParseDoubleList(req.deltas);
  if (deltas.empty()) throw std::domain_error("--delta list is empty");
  std::ostringstream csv;
  csv << "method,delta,epsilon,alpha_star,variant\n";
  std::vector<std::string> methods = r.methods;
  std::sort(methods.begin(), methods.end());
  for (const std::string& name : methods) {
    int m_used = 0;
    std::int64_t steps_used = 0;
    const RdpCurve curve = ComputeCurve(name, req, r, &m_used, &steps_used);
    for (double delta : deltas) {
      const DpGuarantee g = RdpToDp(curve, delta, variant);
      csv << name << ',' << FormatCsvDouble(delta) << ',' << FormatCsvDouble(g.epsilon) << ','
          << FormatCsvDouble(g.alpha_star) << ',' << ToString(variant) << '\n';
    }
  }
  WriteOutput(req, csv.str(), out);
  return 0;
}

int RunCompare(const Request& req, std::ostream& out) {
  const ResolvedRequest r = Resolve(req);
  if (r.methods.size() < 2) throw std::domain_error("compare needs at least two methods");
  std::vector<RdpCurve> curves;
  for (const std::string& name : r.methods) {
    int m_used = 0;
    std::int64_t steps_used = 0;
    curves.push_back(ComputeCurve(name, req, r, &m_used, &steps_used));
  }
  // Rows over the alphas common to every method.
  std::vector<double> alphas = curves.front().alphas;
  for (const RdpCurve& c : curves) {
    std::vector<double> keep;
    std::set_intersection(alphas.begin(), alphas.end(), c.alphas.begin(), c.alphas.end(),
                          std::back_inserter(keep));
    alphas = std::move(keep);
  }
  if (alphas.empty()) throw std::domain_error("no common alphas across the requested methods");

  std::ostringstream csv;
  csv << "alpha";
  for (const std::string& name : r.methods) csv << ',' << name;
  for (std::size_t k = 1; k < r.methods.size(); ++k) {
    csv << ',' << r.methods[k] << "_over_" << r.methods.front();
  }
  csv << '\n';
  for (double alpha : alphas) {
    csv << FormatCsvDouble(alpha);
    std::vector<double> eps;
    for (const RdpCurve& c : curves) {
      const auto it = std::lower_bound(c.alphas.begin(), c.alphas.end(), alpha);
      eps.push_back(c.epsilons[static_cast<std::size_t>(it - c.alphas.begin())]);
      csv << ',' << FormatCsvDouble(eps.back());
    }
    for (std::size_t k = 1; k < eps.size(); ++k) {
      csv << ',' << FormatCsvDouble(eps[k] / eps.front());
    }
    csv << '\n';
  }
  WriteOutput(req, csv.str(), out);
  return 0;
}

int RunVariance(const Request& req, std::ostream& out) {
  if (req.population_file.empty()) throw std::domain_error("--population is required");
  std::ifstream in(req.population_file);
  if (!in) throw std::domain_error("cannot open population file '" + req.population_file + "'");
  Population pop;
  std::string line;
  while (std::getline(in, line)) {
    line = Trim(line);
    if (line.empty()) continue;
    pop.values.push_back(ParseDouble(line));
  }
  if (pop.values.empty()) throw std::domain_error("population file is empty");
  if (req.batch < 1) throw std::domain_error("--batch must be >= 1");
  const VarianceRatios ratios = VarianceRatiosOf(pop, req.batch);
  std::ostringstream csv;
  csv << "var_poisson,var_fswor,var_fswr,fswor_over_poisson,fswr_over_fswor\n";
  csv << FormatCsvDouble(VarPoisson(pop, req.batch)) << ','
      << FormatCsvDouble(VarFswor(pop, req.batch)) << ','
      << FormatCsvDouble(VarFswr(pop, req.batch)) << ','
      << FormatCsvDouble(ratios.fswor_over_poisson) << ','
      << FormatCsvDouble(ratios.fswr_over_fswor) << '\n';
  WriteOutput(req, csv.str(), out);
  return 0;
}

int RunValidate(const Request& req, std::ostream& out) {
  const std::vector<CheckResult> results = RunSelfChecks(req.seed);
  bool all_pass = true;
  std::ostringstream report;
  for (const CheckResult& r : results) {
    all_pass = all_pass && r.pass;
    report << (r.pass ? "PASS" : "FAIL") << ' ' << r.name << ": " << r.detail << '\n';
  }
  report << (all_pass ? "all checks passed\n" : "validation FAILED\n");
  WriteOutput(req, report.str(), out);
  return all_pass ? 0 : 2;
}

}  // namespace

std::string FormatCsvDouble(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", v);
  return buffer;
}

std::vector<double> ParseAlphaGridSpec(const std::string& spec) {
  if (Trim(spec) == "default") return DefaultAlphaGrid();
  std::vector<double> grid;
  for (const std::string& token : SplitCommaList(spec)) {
    const std::size_t c1 = token.find(':');
    if (c1 == std::string::npos) {
      grid.push_back(ParseDouble(token));
      continue;
    }
    const std::size_t c2 = token.find(':', c1 + 1);
    if (c2 == std::string::npos) throw std::domain_error("range needs lo:hi:step: '" + token + "'");
    const double lo = ParseDouble(token.substr(0, c1));
    const double hi = ParseDouble(token.substr(c1 + 1, c2 - c1 - 1));
    const double step = ParseDouble(token.substr(c2 + 1));
    if (!(step > 0.0) || hi < lo) throw std::domain_error("bad range '" + token + "'");
    for (long i = 0;; ++i) {
      const double v = lo + static_cast<double>(i) * step;
      if (v > hi * (1.0 + 1e-12)) break;
      grid.push_back(std::min(v, hi));
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  ValidateAlphaGrid(grid);
  return grid;
}

std::vector<double> ParseDoubleList(const std::string& text) {
  std::vector<double> out;
  for (const std::string& token : SplitCommaList(text)) out.push_back(ParseDouble(token));
  return out;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Renyi-DP accounting for DP-SGD with fixed-size and Poisson subsampling"};
  app.require_subcommand(1);
  Request req;

  CLI::App* curve = app.add_subcommand("curve", "RDP curve(s) as CSV");
  AddCurveOptions(curve, &req, true);

  CLI::App* convert = app.add_subcommand("convert", "(epsilon, delta) table as CSV");
  AddCurveOptions(convert, &req, true);
  convert->add_option("--delta", req.deltas, "comma list of deltas");
  convert->add_option("--variant", req.variant, "classic | improved")
      ->check(CLI::IsMember({"classic", "improved"}));

  CLI::App* compare = app.add_subcommand("compare", "side-by-side curves with ratio columns");
  AddCurveOptions(compare, &req, true);

  CLI::App* variance = app.add_subcommand("variance", "gradient-estimator variances");
  variance->add_option("--population", req.population_file, "one projected gradient per line")
      ->required();
  variance->add_option("--batch", req.batch, "minibatch size |B|")->required();
  variance->add_option("--out", req.out_path, "write CSV here instead of stdout");

  CLI::App* validate = app.add_subcommand("validate", "run the oracle/self-check battery");
  validate->add_option("--seed", req.seed, "Monte-Carlo seed");
  validate->add_option("--out", req.out_path, "write the report here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (curve->parsed()) return RunCurve(req, out);
    if (convert->parsed()) return RunConvert(req, out);
    if (compare->parsed()) return RunCompare(req, out);
    if (variance->parsed()) return RunVariance(req, out);
    return RunValidate(req, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace fsrdp
