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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lohe/harness/config.hpp"
#include "lohe/sphere.hpp"
#include "lohe/thresholds.hpp"
#include "lohe/unitary.hpp"

namespace lohe::harness {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitSuite = 4,
};

struct KuramotoState {
  std::vector<double> thetas;
  std::vector<double> nus;
  double kappa = 0.0;
  double h = 0.0;
};

using InitialState = std::variant<SphereEnsemble, UnitaryEnsemble, KuramotoState>;

/// Independent sub-seed for (stream, index), via splitmix64 mixing.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t index);

/// States around a random base whose diameter equals `diameter` to
/// 1e-12 relative accuracy. Throws ConfigError("init.radius") when the
/// target cannot be reached.
std::vector<ComplexMatrix> near_consensus_matrices(int d, int n,
                                                   double diameter,
                                                   std::uint64_t seed);
std::vector<RealVector> near_consensus_points(int d, int n, double diameter,
                                              std::uint64_t seed);

/// Zero-sum Hermitian ensemble rescaled to the given diameter.
std::vector<ComplexMatrix> hamiltonians_with_diameter(int d, int n,
                                                      double diameter,
                                                      std::uint64_t seed);

/// Zero-sum real skew-symmetric matrices.
std::vector<RealMatrix> random_zero_sum_skew(int d, int n, std::uint64_t seed,
                                             double scale);

/// Throws ConfigError on unusable explicit files or unreachable targets.
InitialState build_initial_state(const ExperimentConfig &cfg);

/// Theorem whose framework matches the configured model, if any.
std::optional<Theorem> applicable_theorem(ModelKind model,
                                          bool hamiltonians_vanish,
                                          bool paired = false);

struct RunOptions {
  std::filesystem::path output_dir = ".";
};

struct RunResult {
  int exit_code = kExitOk;
  std::string message;
  long long steps_completed = 0;
  std::optional<FrameworkReport> framework;
  /// Last diagnostics row (without n).
  std::vector<double> final_row;
};

/// Artifacts: diagnostics.csv, final_state.json, framework_report.json.
RunResult run_experiment(const ExperimentConfig &cfg, const RunOptions &opts);

/// Lockstep run of two matrix-model configurations with identical model,
/// shape, parameters and Hamiltonians. Artifacts: pair_diagnostics.csv,
/// final_state_a.json, final_state_b.json, framework_report.json.
RunResult pair_run(const ExperimentConfig &a, const ExperimentConfig &b,
                   const RunOptions &opts);

}  // namespace lohe::harness
