// Copyright 2026 The lohe-discrete Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <fmt/core.h>

#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "lohe/harness/config.hpp"
#include "lohe/harness/experiment.hpp"
#include "lohe/harness/suite.hpp"
#include "lohe/thresholds.hpp"

namespace {

using namespace lohe;
using namespace lohe::harness;

int report_run(const RunResult &result) {
  if (result.exit_code == kExitOk) {
    fmt::print("completed {} steps\n", result.steps_completed);
  } else {
    fmt::print(stderr, "error: {}\n", result.message);
  }
  return result.exit_code;
}

int cmd_run(const std::string &config, const std::string &out) {
  const auto cfg = load_config(config);
  std::filesystem::create_directories(out);
  return report_run(run_experiment(cfg, {out}));
}

int cmd_pair(const std::string &a, const std::string &b, const std::string &out) {
  const auto ca = load_config(a);
  const auto cb = load_config(b);
  std::filesystem::create_directories(out);
  return report_run(pair_run(ca, cb, {out}));
}

int cmd_suite(const std::string &id, std::optional<double> beta, bool parallel) {
  std::vector<std::string> ids;
  if (id == "all") {
    ids = suite_ids();
  } else {
    ids.push_back(id);
  }
  SuiteOptions opts;
  opts.beta = beta;
  const auto reports = run_suites(ids, opts, parallel);
  nlohmann::json doc = nlohmann::json::array();
  bool ok = true;
  for (const auto &r : reports) {
    doc.push_back(to_json(r));
    ok = ok && r.passed();
    for (const auto &c : r.checks) {
      if (!c.passed) {
        fmt::print(stderr, "suite {} failed: {} ({:.6e} vs bound {:.6e})\n", r.id,
                   c.name, c.value, c.bound);
      }
    }
  }
  std::cout << (doc.size() == 1 ? doc[0] : doc).dump(2) << '\n';
  return ok ? kExitOk : kExitSuite;
}

int cmd_thresholds() {
  fmt::print("beta0 = {:.10f}\n", find_beta0());
  fmt::print("beta1 = {:.10f}\n", find_beta1());
  fmt::print("{:>8} {:>14} {:>14}\n", "beta", "Lambda", "M");
  for (int k = 0; k <= 10; ++k) {
    const double beta = 0.05 * k;
    fmt::print("{:>8.3f} {:>14.8f} {:>14.8f}\n", beta, lambda_of(beta), m_of(beta));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Discrete Lohe aggregation models"};
  app.require_subcommand(1);

  std::string config;
  std::string out = ".";
  auto *run = app.add_subcommand("run", "run one experiment from a JSON config");
  run->add_option("--config", config, "experiment configuration")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "output directory");

  std::string config_a;
  std::string config_b;
  auto *pair = app.add_subcommand("pair", "run two matrix-model configs in lockstep");
  pair->add_option("--config-a", config_a)->required()->check(CLI::ExistingFile);
  pair->add_option("--config-b", config_b)->required()->check(CLI::ExistingFile);
  pair->add_option("--out", out, "output directory");

  std::string suite_id;
  std::optional<double> beta;
  bool parallel = false;
  auto *suite = app.add_subcommand("suite", "run a property suite, or 'all'");
  suite->add_option("id", suite_id)->required();
  suite->add_option("--beta", beta, "override the suite's coupling step kappa*h");
  suite->add_flag("--parallel", parallel, "run suites concurrently");

  auto *thresholds = app.add_subcommand("thresholds", "print beta0, beta1 and a Lambda/M table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(config, out);
    if (*pair) return cmd_pair(config_a, config_b, out);
    if (*suite) return cmd_suite(suite_id, beta, parallel);
    if (*thresholds) return cmd_thresholds();
  } catch (const ConfigError &e) {
    fmt::print(stderr, "config error in '{}': {}\n", e.field(), e.what());
    return kExitConfig;
  } catch (const std::invalid_argument &e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitConfig;
  } catch (const std::exception &e) {
    fmt::print(stderr, "numerical error: {}\n", e.what());
    return kExitNumerical;
  }
  return kExitOk;
}
