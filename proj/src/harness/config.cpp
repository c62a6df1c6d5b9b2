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

#include "lohe/harness/config.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>

namespace lohe::harness {

using nlohmann::json;

namespace {

std::string join(const std::string &prefix, const std::string &key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void reject_unknown(const json &obj, const std::string &prefix,
                    std::initializer_list<std::string_view> allowed) {
  for (const auto &item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) ==
        allowed.end()) {
      throw ConfigError(join(prefix, item.key()), "unknown key");
    }
  }
}

const json &require(const json &obj, const std::string &prefix,
                    const std::string &key) {
  if (!obj.contains(key)) throw ConfigError(join(prefix, key), "missing");
  return obj.at(key);
}

void require_object(const json &v, const std::string &field) {
  if (!v.is_object()) throw ConfigError(field, "expected an object");
}

double get_real(const json &v, const std::string &field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(field, "must be finite");
  return x;
}

long long get_int(const json &v, const std::string &field) {
  if (!v.is_number_integer()) throw ConfigError(field, "expected an integer");
  if (v.is_number_unsigned() &&
      v.get<std::uint64_t>() >
          static_cast<std::uint64_t>(std::numeric_limits<long long>::max())) {
    throw ConfigError(field, "out of range");
  }
  return v.get<long long>();
}

std::uint64_t get_seed(const json &v, const std::string &field) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    const auto s = v.get<std::int64_t>();
    if (s < 0) throw ConfigError(field, "seed must be a non-negative integer");
    return static_cast<std::uint64_t>(s);
  }
  throw ConfigError(field, "expected an unsigned integer");
}

std::string get_string(const json &v, const std::string &field) {
  if (!v.is_string()) throw ConfigError(field, "expected a string");
  return v.get<std::string>();
}

std::filesystem::path resolve(const std::filesystem::path &base,
                              const std::string &file) {
  std::filesystem::path p(file);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p;
}

InitSpec parse_init(const json &v, const std::filesystem::path &base) {
  const std::string prefix = "init";
  require_object(v, prefix);
  const auto kind = get_string(require(v, prefix, "kind"), "init.kind");
  InitSpec spec;
  if (kind == "random" || kind == "consensus") {
    reject_unknown(v, prefix, {"kind"});
    spec.kind = kind == "random" ? InitSpec::Kind::Random
                                 : InitSpec::Kind::Consensus;
  } else if (kind == "near-consensus") {
    reject_unknown(v, prefix, {"kind", "radius"});
    spec.kind = InitSpec::Kind::NearConsensus;
    spec.radius = get_real(require(v, prefix, "radius"), "init.radius");
    if (spec.radius < 0.0) throw ConfigError("init.radius", "must be >= 0");
  } else if (kind == "explicit") {
    reject_unknown(v, prefix, {"kind", "file"});
    spec.kind = InitSpec::Kind::Explicit;
    spec.file = resolve(base, get_string(require(v, prefix, "file"), "init.file"));
  } else {
    throw ConfigError("init.kind", fmt::format("unknown kind '{}'", kind));
  }
  return spec;
}

HamiltonianSpec parse_hamiltonians(const json &v,
                                   const std::filesystem::path &base) {
  const std::string prefix = "hamiltonians";
  require_object(v, prefix);
  const auto kind =
      get_string(require(v, prefix, "kind"), "hamiltonians.kind");
  HamiltonianSpec spec;
  if (kind == "zero") {
    reject_unknown(v, prefix, {"kind"});
    spec.kind = HamiltonianSpec::Kind::Zero;
  } else if (kind == "random-zero-sum") {
    reject_unknown(v, prefix, {"kind", "scale", "diameter", "seed"});
    spec.kind = HamiltonianSpec::Kind::RandomZeroSum;
    if (v.contains("scale") && v.contains("diameter")) {
      throw ConfigError("hamiltonians.diameter",
                        "give either scale or diameter, not both");
    }
    if (v.contains("scale")) {
      spec.scale = get_real(v.at("scale"), "hamiltonians.scale");
      if (spec.scale < 0.0) throw ConfigError("hamiltonians.scale", "must be >= 0");
    }
    if (v.contains("diameter")) {
      spec.diameter = get_real(v.at("diameter"), "hamiltonians.diameter");
      if (*spec.diameter < 0.0) {
        throw ConfigError("hamiltonians.diameter", "must be >= 0");
      }
    }
    if (v.contains("seed")) spec.seed = get_seed(v.at("seed"), "hamiltonians.seed");
  } else if (kind == "explicit") {
    reject_unknown(v, prefix, {"kind", "file"});
    spec.kind = HamiltonianSpec::Kind::Explicit;
    spec.file = resolve(
        base, get_string(require(v, prefix, "file"), "hamiltonians.file"));
  } else {
    throw ConfigError("hamiltonians.kind", fmt::format("unknown kind '{}'", kind));
  }
  return spec;
}

ContinuousRunConfig parse_continuous(const json &v) {
  require_object(v, "continuous");
  reject_unknown(v, "continuous", {"substeps_per_h", "reproject_every"});
  ContinuousRunConfig cfg;
  if (v.contains("substeps_per_h")) {
    const auto s = get_int(v.at("substeps_per_h"), "continuous.substeps_per_h");
    if (s < 1 || s > 1'000'000) {
      throw ConfigError("continuous.substeps_per_h", "must lie in [1, 1e6]");
    }
    cfg.substeps_per_h = static_cast<int>(s);
  }
  if (v.contains("reproject_every")) {
    const auto r = get_int(v.at("reproject_every"), "continuous.reproject_every");
    if (r < 1 || r > 1'000'000) {
      throw ConfigError("continuous.reproject_every", "must lie in [1, 1e6]");
    }
    cfg.reproject_every = static_cast<int>(r);
  }
  return cfg;
}

FrameworkSpec parse_framework(const json &v) {
  require_object(v, "framework");
  reject_unknown(v, "framework", {"alpha", "epsilon", "constant"});
  FrameworkSpec spec;
  if (v.contains("alpha")) {
    spec.alpha = get_real(v.at("alpha"), "framework.alpha");
  }
  if (v.contains("epsilon")) {
    spec.epsilon = get_real(v.at("epsilon"), "framework.epsilon");
    if (!(spec.epsilon > 0.0)) throw ConfigError("framework.epsilon", "must be > 0");
  }
  if (v.contains("constant")) {
    spec.constant = get_real(v.at("constant"), "framework.constant");
    if (!(spec.constant > 0.0)) {
      throw ConfigError("framework.constant", "must be > 0");
    }
  }
  return spec;
}

std::vector<Output> parse_outputs(const json &v) {
  if (!v.is_array()) throw ConfigError("outputs", "expected an array");
  std::vector<Output> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const auto field = fmt::format("outputs[{}]", k);
    const auto name = get_string(v[k], field);
    Output o;
    if (name == "diagnostics-csv") {
      o = Output::DiagnosticsCsv;
    } else if (name == "final-state-json") {
      o = Output::FinalStateJson;
    } else if (name == "framework-report-json") {
      o = Output::FrameworkReportJson;
    } else {
      throw ConfigError(field, fmt::format("unknown output '{}'", name));
    }
    if (std::find(out.begin(), out.end(), o) != out.end()) {
      throw ConfigError(field, "duplicate output");
    }
    out.push_back(o);
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::string field, const std::string &what)
    : std::invalid_argument(fmt::format("config field '{}': {}", field, what)),
      field_(std::move(field)) {}

std::string_view to_string(ModelKind m) {
  switch (m) {
    case ModelKind::Sphere:
      return "sphere";
    case ModelKind::DlmA:
      return "dlm-a";
    case ModelKind::DlmB:
      return "dlm-b";
    case ModelKind::DlmC:
      return "dlm-c";
    case ModelKind::Kuramoto:
      return "kuramoto";
    case ModelKind::ContinuousSphere:
      return "continuous-sphere";
    case ModelKind::ContinuousMatrix:
      return "continuous-matrix";
  }
  return "unknown";
}

ModelKind parse_model(std::string_view name) {
  for (ModelKind m :
       {ModelKind::Sphere, ModelKind::DlmA, ModelKind::DlmB, ModelKind::DlmC,
        ModelKind::Kuramoto, ModelKind::ContinuousSphere,
        ModelKind::ContinuousMatrix}) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("model", fmt::format("unknown model '{}'", name));
}

bool is_matrix_model(ModelKind m) {
  return m == ModelKind::DlmA || m == ModelKind::DlmB ||
         m == ModelKind::DlmC || m == ModelKind::ContinuousMatrix;
}

bool is_sphere_model(ModelKind m) {
  return m == ModelKind::Sphere || m == ModelKind::ContinuousSphere ||
         m == ModelKind::Kuramoto;
}

bool ExperimentConfig::wants(Output o) const {
  return std::find(outputs.begin(), outputs.end(), o) != outputs.end();
}

ExperimentConfig parse_config(const json &doc,
                              const std::filesystem::path &base_dir) {
  if (!doc.is_object()) throw ConfigError("<root>", "expected an object");
  reject_unknown(doc, "",
                 {"model", "d", "N", "kappa", "h", "steps", "seed", "init",
                  "hamiltonians", "continuous", "framework", "outputs",
                  "record_timing"});
  ExperimentConfig cfg;
  cfg.model = parse_model(get_string(require(doc, "", "model"), "model"));

  const auto d = get_int(require(doc, "", "d"), "d");
  if (cfg.model == ModelKind::Kuramoto) {
    if (d != 2) throw ConfigError("d", "kuramoto runs on the circle, d must be 2");
  } else if (is_sphere_model(cfg.model)) {
    if (d < 2 || d > 1024) throw ConfigError("d", "must lie in [2, 1024]");
  } else if (d < 1 || d > 64) {
    throw ConfigError("d", "must lie in [1, 64]");
  }
  cfg.d = static_cast<int>(d);

  const auto n = get_int(require(doc, "", "N"), "N");
  if (n < 1 || n > 100000) throw ConfigError("N", "must lie in [1, 1e5]");
  cfg.n = static_cast<int>(n);

  cfg.kappa = get_real(require(doc, "", "kappa"), "kappa");
  if (cfg.kappa < 0.0) throw ConfigError("kappa", "must be >= 0");
  cfg.h = get_real(require(doc, "", "h"), "h");
  if (!(cfg.h > 0.0)) throw ConfigError("h", "must be > 0");
  cfg.steps = get_int(require(doc, "", "steps"), "steps");
  if (cfg.steps < 1) throw ConfigError("steps", "must be >= 1");
  cfg.seed = get_seed(require(doc, "", "seed"), "seed");

  if (doc.contains("init")) cfg.init = parse_init(doc.at("init"), base_dir);
  if (doc.contains("hamiltonians")) {
    cfg.hamiltonians = parse_hamiltonians(doc.at("hamiltonians"), base_dir);
  }
  if (doc.contains("continuous")) {
    cfg.continuous = parse_continuous(doc.at("continuous"));
  }
  if (doc.contains("framework")) {
    cfg.framework = parse_framework(doc.at("framework"));
  }
  if (doc.contains("outputs")) cfg.outputs = parse_outputs(doc.at("outputs"));
  if (doc.contains("record_timing")) {
    if (!doc.at("record_timing").is_boolean()) {
      throw ConfigError("record_timing", "expected a boolean");
    }
    cfg.record_timing = doc.at("record_timing").get<bool>();
  }

  if (cfg.init.kind == InitSpec::Kind::NearConsensus) {
    const double cap = is_sphere_model(cfg.model) ? 2.0 : 2.0 * std::sqrt(cfg.d);
    if (!(cfg.init.radius < cap)) {
      throw ConfigError("init.radius",
                        fmt::format("must be below the maximal diameter {}", cap));
    }
    if (cfg.n == 1 && cfg.init.radius > 0.0) {
      throw ConfigError("init.radius", "a single agent has diameter 0");
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", fmt::format("cannot open {}", path.string()));
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error &e) {
    throw ConfigError("<file>", fmt::format("{}: {}", path.string(), e.what()));
  }
  return parse_config(doc, path.parent_path());
}

}  // namespace lohe::harness
