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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lohe/thresholds.hpp"

namespace lohe::harness {

struct SuiteCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double bound = 0.0;
  std::string detail;
};

struct SuiteReport {
  std::string id;
  /// Hypotheses failed (up front or online); dynamics assertions skipped.
  bool skipped = false;
  std::vector<FrameworkReport> frameworks;
  std::vector<SuiteCheck> checks;
  std::vector<std::string> notes;
  double elapsed_seconds = 0.0;

  bool passed() const;
  const SuiteCheck *find(std::string_view name) const;
};

struct SuiteOptions {
  /// Replaces the canonical beta = kappa h of the dynamic suites.
  std::optional<double> beta;
};

/// T3.1, T5.1, T6.1, T6.2, T6.3, lemmas, and the supporting suites
/// thresholds, coincidence, kuramoto, preservation, expm.
const std::vector<std::string> &suite_ids();

/// Throws std::invalid_argument for unknown ids.
SuiteReport run_theorem_suite(std::string_view id, const SuiteOptions &opts = {});

/// Runs the given suites, on worker threads when parallel is set; results
/// keep the order of ids.
std::vector<SuiteReport> run_suites(const std::vector<std::string> &ids,
                                    const SuiteOptions &opts, bool parallel);

nlohmann::json to_json(const SuiteReport &r);

}  // namespace lohe::harness
