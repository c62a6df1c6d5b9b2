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

// Acceptance criteria: one line per criterion, nonzero exit on any failure.

#include <fmt/core.h>

#include <optional>
#include <string>
#include <vector>

#include "lohe/harness/suite.hpp"

namespace {

struct Criterion {
  int number;
  std::string name;
  std::string suite;
  std::optional<double> max_seconds;
};

}  // namespace

int main() {
  using lohe::harness::run_theorem_suite;
  const std::vector<Criterion> criteria{
      {1, "threshold roots", "thresholds", 1.0},
      {2, "sphere aggregation", "T3.1", 5.0},
      {3, "identical-Hamiltonian aggregation", "T5.1", 5.0},
      {4, "scheme coincidence for vanishing Hamiltonians", "coincidence", std::nullopt},
      {5, "Kuramoto reductions", "kuramoto", std::nullopt},
      {6, "matrix inequalities", "lemmas", std::nullopt},
      {7, "Lie-Trotter orbital stability", "T6.1", 10.0},
      {8, "Lie-Trotter locking and uniform convergence", "T6.2", 60.0},
      {9, "Strang orbital stability", "T6.3", std::nullopt},
      {10, "structure preservation", "preservation", std::nullopt},
      {11, "matrix exponential", "expm", std::nullopt},
  };

  int failures = 0;
  for (const auto &c : criteria) {
    const auto report = run_theorem_suite(c.suite);
    bool ok = report.passed() && !report.skipped;
    std::string detail;
    for (const auto &check : report.checks) {
      if (!check.passed) {
        detail += fmt::format(" [{}: {:.3e} vs {:.3e}]", check.name, check.value,
                              check.bound);
      }
    }
    if (report.skipped) detail += " [hypotheses not met, suite skipped]";
    if (c.max_seconds && report.elapsed_seconds >= *c.max_seconds) {
      ok = false;
      detail += fmt::format(" [runtime {:.2f}s >= {:.0f}s]", report.elapsed_seconds,
                            *c.max_seconds);
    }
    fmt::print("[{}] {:>2} {}: {} checks, {:.2f}s{}\n", ok ? "PASS" : "FAIL",
               c.number, c.name, report.checks.size(), report.elapsed_seconds,
               detail);
    if (!ok) ++failures;
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
