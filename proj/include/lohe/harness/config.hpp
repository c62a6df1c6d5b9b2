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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lohe/continuous.hpp"

namespace lohe::harness {

enum class ModelKind {
  Sphere,
  DlmA,
  DlmB,
  DlmC,
  Kuramoto,
  ContinuousSphere,
  ContinuousMatrix
};

std::string_view to_string(ModelKind m);
ModelKind parse_model(std::string_view name);

bool is_matrix_model(ModelKind m);
bool is_sphere_model(ModelKind m);

struct InitSpec {
  enum class Kind { Random, Consensus, NearConsensus, Explicit };
  Kind kind = Kind::Random;
  /// Exact initial diameter for NearConsensus.
  double radius = 0.0;
  std::filesystem::path file;
};

struct HamiltonianSpec {
  enum class Kind { Zero, RandomZeroSum, Explicit };
  Kind kind = Kind::Zero;
  double scale = 1.0;
  /// When set, the generated ensemble is rescaled to this diameter.
  std::optional<double> diameter;
  std::optional<std::uint64_t> seed;
  std::filesystem::path file;
};

struct FrameworkSpec {
  std::optional<double> alpha;
  double epsilon = 0.5;
  double constant = 1.0;
};

enum class Output { DiagnosticsCsv, FinalStateJson, FrameworkReportJson };

struct ExperimentConfig {
  ModelKind model = ModelKind::Sphere;
  int d = 2;
  int n = 1;
  double kappa = 0.0;
  double h = 0.0;
  long long steps = 1;
  std::uint64_t seed = 0;
  InitSpec init;
  HamiltonianSpec hamiltonians;
  ContinuousRunConfig continuous;
  FrameworkSpec framework;
  std::vector<Output> outputs{Output::DiagnosticsCsv};
  bool record_timing = false;

  bool wants(Output o) const;
};

/// Invalid configuration; field() names the offending key path.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string &what);
  const std::string &field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Relative explicit-file paths are resolved against base_dir.
ExperimentConfig parse_config(const nlohmann::json &doc,
                              const std::filesystem::path &base_dir = {});
ExperimentConfig load_config(const std::filesystem::path &path);

}  // namespace lohe::harness
