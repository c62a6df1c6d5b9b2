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

#include "lohe/harness/experiment.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include "lohe/continuous.hpp"
#include "lohe/framework.hpp"
#include "lohe/harness/io.hpp"

namespace lohe::harness {

using nlohmann::json;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Smallest-found scale s with diameter_at(s) == target, by doubling then
// bisection.
double solve_scale(const std::function<double(double)> &diameter_at,
                   double target) {
  if (target == 0.0) return 0.0;
  double lo = 0.0;
  double hi = 1e-3 * target;
  for (int k = 0; diameter_at(hi) < target; ++k) {
    if (k > 80) {
      throw ConfigError("init.radius",
                        fmt::format("diameter {} is not reachable", target));
    }
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-17 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (diameter_at(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double sphere_diameter(const std::vector<RealVector> &xs) {
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      worst = std::max(worst, (xs[i] - xs[j]).norm());
    }
  }
  return worst;
}

double chord_diameter(const std::vector<double> &thetas) {
  double worst = 0.0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    for (std::size_t j = i + 1; j < thetas.size(); ++j) {
      worst = std::max(worst, std::abs(2.0 * std::sin(0.5 * (thetas[i] - thetas[j]))));
    }
  }
  return worst;
}

std::vector<double> zero_mean_gaussians(int n, std::uint64_t seed, double scale) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> out(static_cast<std::size_t>(n));
  double mean = 0.0;
  for (auto &x : out) {
    x = normal(gen);
    mean += x;
  }
  mean /= static_cast<double>(n);
  for (auto &x : out) x = scale * (x - mean);
  return out;
}

json read_state_file(const std::filesystem::path &path, const std::string &field) {
  try {
    return read_json(path);
  } catch (const std::exception &e) {
    throw ConfigError(field, e.what());
  }
}

const json &state_key(const json &doc, const std::string &key,
                      const std::string &field, std::size_t n) {
  if (!doc.is_object() || !doc.contains(key) || !doc.at(key).is_array()) {
    throw ConfigError(field, fmt::format("file has no '{}' array", key));
  }
  const auto &arr = doc.at(key);
  if (arr.size() != n) {
    throw ConfigError(field, fmt::format("'{}' has {} entries, expected N = {}",
                                         key, arr.size(), n));
  }
  return arr;
}

template <class T, class F>
std::vector<T> read_list(const json &arr, const std::string &field,
                         const std::string &key, F parse) {
  std::vector<T> out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    try {
      out.push_back(parse(arr[k], fmt::format("{}[{}]", key, k)));
    } catch (const std::invalid_argument &e) {
      throw ConfigError(field, e.what());
    }
  }
  return out;
}

void require_dims(int rows, int cols, int d, const std::string &field) {
  if (rows != d || cols != d) {
    throw ConfigError(field, fmt::format("expected {}x{} entries, got {}x{}", d,
                                         d, rows, cols));
  }
}

std::vector<ComplexMatrix> build_matrices(const ExperimentConfig &cfg) {
  const auto n = static_cast<std::size_t>(cfg.n);
  switch (cfg.init.kind) {
    case InitSpec::Kind::Random: {
      std::vector<ComplexMatrix> out;
      for (std::size_t i = 0; i < n; ++i) {
        out.push_back(random_unitary(cfg.d, derive_seed(cfg.seed, 1, i)));
      }
      return out;
    }
    case InitSpec::Kind::Consensus:
      return std::vector<ComplexMatrix>(
          n, random_unitary(cfg.d, derive_seed(cfg.seed, 1, 0)));
    case InitSpec::Kind::NearConsensus:
      return near_consensus_matrices(cfg.d, cfg.n, cfg.init.radius, cfg.seed);
    case InitSpec::Kind::Explicit: {
      const auto doc = read_state_file(cfg.init.file, "init.file");
      auto out = read_list<ComplexMatrix>(
          state_key(doc, "matrices", "init.file", n), "init.file", "matrices",
          complex_matrix_from_json);
      for (const auto &m : out) {
        require_dims(static_cast<int>(m.rows()), static_cast<int>(m.cols()),
                     cfg.d, "init.file");
      }
      return out;
    }
  }
  return {};
}

std::vector<ComplexMatrix> build_hamiltonians(const ExperimentConfig &cfg) {
  const auto &spec = cfg.hamiltonians;
  const auto n = static_cast<std::size_t>(cfg.n);
  const auto seed = spec.seed.value_or(derive_seed(cfg.seed, 3, 0));
  switch (spec.kind) {
    case HamiltonianSpec::Kind::Zero:
      return zero_hamiltonians(cfg.d, n);
    case HamiltonianSpec::Kind::RandomZeroSum:
      if (spec.diameter) {
        try {
          return hamiltonians_with_diameter(cfg.d, cfg.n, *spec.diameter, seed);
        } catch (const std::invalid_argument &e) {
          throw ConfigError("hamiltonians.diameter", e.what());
        }
      }
      return random_hermitian_zero_trace_sum(cfg.d, cfg.n, seed, spec.scale);
    case HamiltonianSpec::Kind::Explicit: {
      const auto doc = read_state_file(spec.file, "hamiltonians.file");
      auto out = read_list<ComplexMatrix>(
          state_key(doc, "hamiltonians", "hamiltonians.file", n),
          "hamiltonians.file", "hamiltonians", complex_matrix_from_json);
      for (const auto &m : out) {
        require_dims(static_cast<int>(m.rows()), static_cast<int>(m.cols()),
                     cfg.d, "hamiltonians.file");
      }
      return out;
    }
  }
  return {};
}

std::vector<RealVector> build_points(const ExperimentConfig &cfg) {
  const auto n = static_cast<std::size_t>(cfg.n);
  switch (cfg.init.kind) {
    case InitSpec::Kind::Random: {
      std::vector<RealVector> out;
      for (std::size_t i = 0; i < n; ++i) {
        out.push_back(random_unit_vector(cfg.d, derive_seed(cfg.seed, 1, i)));
      }
      return out;
    }
    case InitSpec::Kind::Consensus:
      return std::vector<RealVector>(
          n, random_unit_vector(cfg.d, derive_seed(cfg.seed, 1, 0)));
    case InitSpec::Kind::NearConsensus:
      return near_consensus_points(cfg.d, cfg.n, cfg.init.radius, cfg.seed);
    case InitSpec::Kind::Explicit: {
      const auto doc = read_state_file(cfg.init.file, "init.file");
      auto out = read_list<RealVector>(state_key(doc, "points", "init.file", n),
                                       "init.file", "points",
                                       real_vector_from_json);
      for (const auto &x : out) {
        if (x.size() != cfg.d) {
          throw ConfigError("init.file", fmt::format("point has {} entries, "
                                                     "expected d = {}",
                                                     x.size(), cfg.d));
        }
      }
      return out;
    }
  }
  return {};
}

std::vector<RealMatrix> build_omegas(const ExperimentConfig &cfg) {
  const auto &spec = cfg.hamiltonians;
  const auto n = static_cast<std::size_t>(cfg.n);
  const auto seed = spec.seed.value_or(derive_seed(cfg.seed, 3, 0));
  switch (spec.kind) {
    case HamiltonianSpec::Kind::Zero:
      return zero_omegas(cfg.d, n);
    case HamiltonianSpec::Kind::RandomZeroSum: {
      auto out = random_zero_sum_skew(cfg.d, cfg.n, seed, 1.0);
      double scale = spec.scale;
      if (spec.diameter) {
        double diam = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = i + 1; j < n; ++j) {
            diam = std::max(diam, (out[i] - out[j]).norm());
          }
        }
        if (diam == 0.0 && *spec.diameter > 0.0) {
          throw ConfigError("hamiltonians.diameter", "ensemble has diameter 0");
        }
        scale = diam == 0.0 ? 0.0 : *spec.diameter / diam;
      }
      for (auto &w : out) w *= scale;
      return out;
    }
    case HamiltonianSpec::Kind::Explicit: {
      const auto doc = read_state_file(spec.file, "hamiltonians.file");
      auto out = read_list<RealMatrix>(
          state_key(doc, "omegas", "hamiltonians.file", n), "hamiltonians.file",
          "omegas", real_matrix_from_json);
      for (const auto &w : out) {
        require_dims(static_cast<int>(w.rows()), static_cast<int>(w.cols()),
                     cfg.d, "hamiltonians.file");
      }
      return out;
    }
  }
  return {};
}

KuramotoState build_kuramoto(const ExperimentConfig &cfg) {
  KuramotoState st;
  st.kappa = cfg.kappa;
  st.h = cfg.h;
  const auto n = static_cast<std::size_t>(cfg.n);
  std::mt19937_64 gen(derive_seed(cfg.seed, 1, 0));
  std::uniform_real_distribution<double> uniform(-std::numbers::pi,
                                                 std::numbers::pi);
  switch (cfg.init.kind) {
    case InitSpec::Kind::Random:
      for (std::size_t i = 0; i < n; ++i) st.thetas.push_back(uniform(gen));
      break;
    case InitSpec::Kind::Consensus:
      st.thetas.assign(n, uniform(gen));
      break;
    case InitSpec::Kind::NearConsensus: {
      const double base = uniform(gen);
      std::uniform_real_distribution<double> spread(-1.0, 1.0);
      std::vector<double> u(n);
      for (auto &x : u) x = spread(gen);
      const auto at = [&](double s) {
        std::vector<double> th(n);
        for (std::size_t i = 0; i < n; ++i) th[i] = base + s * u[i];
        return th;
      };
      const double s = solve_scale(
          [&](double s) { return chord_diameter(at(s)); }, cfg.init.radius);
      st.thetas = at(s);
      break;
    }
    case InitSpec::Kind::Explicit: {
      const auto doc = read_state_file(cfg.init.file, "init.file");
      const auto &arr = state_key(doc, "thetas", "init.file", n);
      for (std::size_t i = 0; i < n; ++i) {
        if (!arr[i].is_number()) throw ConfigError("init.file", "thetas must be numbers");
        st.thetas.push_back(arr[i].get<double>());
      }
      break;
    }
  }
  const auto &spec = cfg.hamiltonians;
  const auto seed = spec.seed.value_or(derive_seed(cfg.seed, 3, 0));
  switch (spec.kind) {
    case HamiltonianSpec::Kind::Zero:
      st.nus.assign(n, 0.0);
      break;
    case HamiltonianSpec::Kind::RandomZeroSum: {
      st.nus = zero_mean_gaussians(cfg.n, seed, 1.0);
      const auto [lo, hi] = std::minmax_element(st.nus.begin(), st.nus.end());
      const double diam = *hi - *lo;
      double scale = spec.scale;
      if (spec.diameter) {
        if (diam == 0.0 && *spec.diameter > 0.0) {
          throw ConfigError("hamiltonians.diameter", "ensemble has diameter 0");
        }
        scale = diam == 0.0 ? 0.0 : *spec.diameter / diam;
      }
      for (auto &nu : st.nus) nu *= scale;
      break;
    }
    case HamiltonianSpec::Kind::Explicit: {
      const auto doc = read_state_file(spec.file, "hamiltonians.file");
      const auto &arr = state_key(doc, "nus", "hamiltonians.file", n);
      for (std::size_t i = 0; i < n; ++i) {
        if (!arr[i].is_number()) {
          throw ConfigError("hamiltonians.file", "nus must be numbers");
        }
        st.nus.push_back(arr[i].get<double>());
      }
      break;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(st.thetas[i]) || !std::isfinite(st.nus[i])) {
      throw ConfigError("init", "non-finite angle or frequency");
    }
  }
  return st;
}

// --- diagnostics -----------------------------------------------------------

std::vector<std::string> csv_header(ModelKind model, bool timing) {
  std::vector<std::string> header{"n", "diameter"};
  if (is_matrix_model(model)) {
    header.push_back("unitarity_defect");
  } else {
    header.push_back("rho");
    header.push_back("min_pair_inner");
  }
  if (timing) header.push_back("wall_clock_ns");
  return header;
}

std::vector<double> sphere_row(const SphereEnsemble &ens) {
  const auto diag = sphere_diagnostics(ens);
  return {diag.diameter, diag.rho, diag.min_pair_inner};
}

std::vector<double> matrix_row(const UnitaryEnsemble &ens) {
  return {matrix_diameter(ens), unitarity_defect(ens)};
}

json state_json(const ExperimentConfig &cfg, long long step,
                const std::variant<SphereEnsemble, UnitaryEnsemble,
                                   KuramotoState> &state) {
  json doc = {{"model", std::string(to_string(cfg.model))},
              {"d", cfg.d},
              {"N", cfg.n},
              {"kappa", cfg.kappa},
              {"h", cfg.h},
              {"step", step}};
  if (const auto *u = std::get_if<UnitaryEnsemble>(&state)) {
    json ms = json::array();
    json hs = json::array();
    for (const auto &m : u->matrices) ms.push_back(to_json(m));
    for (const auto &m : u->hamiltonians) hs.push_back(to_json(m));
    doc["matrices"] = ms;
    doc["hamiltonians"] = hs;
  } else if (const auto *s = std::get_if<SphereEnsemble>(&state)) {
    json ps = json::array();
    json ws = json::array();
    for (const auto &x : s->points) ps.push_back(to_json(x));
    for (const auto &w : s->omegas) ws.push_back(to_json(w));
    doc["points"] = ps;
    doc["omegas"] = ws;
  } else {
    const auto &k = std::get<KuramotoState>(state);
    doc["thetas"] = k.thetas;
    doc["nus"] = k.nus;
    json ps = json::array();
    for (double t : k.thetas) ps.push_back(json::array({std::cos(t), std::sin(t)}));
    doc["points"] = ps;
  }
  return doc;
}

ConfigSummary with_framework(ConfigSummary s, const FrameworkSpec &spec) {
  s.alpha = spec.alpha;
  s.epsilon = spec.epsilon;
  s.implied_constant = spec.constant;
  return s;
}

using Clock = std::chrono::steady_clock;

long long elapsed_ns(Clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - since)
      .count();
}

// Stepper over a single model kind with a uniform diagnostics interface.
class Runner {
 public:
  Runner(const ExperimentConfig &cfg, InitialState state)
      : cfg_(cfg), state_(std::move(state)) {
    if (auto *u = std::get_if<UnitaryEnsemble>(&state_)) {
      if (cfg.model != ModelKind::ContinuousMatrix) stepper_.emplace(*u);
    }
  }

  void step() {
    if (auto *u = std::get_if<UnitaryEnsemble>(&state_)) {
      *u = stepper_ ? stepper_->step(*u)
                    : continuous_evolve(*u, cfg_.h, cfg_.continuous);
    } else if (auto *s = std::get_if<SphereEnsemble>(&state_)) {
      *s = cfg_.model == ModelKind::ContinuousSphere
               ? continuous_evolve(*s, cfg_.h, cfg_.continuous)
               : sphere_step(*s);
    } else {
      auto &k = std::get<KuramotoState>(state_);
      k.thetas = kuramoto_step(k.thetas, k.nus, k.kappa, k.h);
    }
  }

  std::vector<double> row() const {
    if (const auto *u = std::get_if<UnitaryEnsemble>(&state_)) return matrix_row(*u);
    if (const auto *s = std::get_if<SphereEnsemble>(&state_)) return sphere_row(*s);
    const auto &k = std::get<KuramotoState>(state_);
    return sphere_row(embed_circle(k.thetas, k.nus, k.kappa, k.h));
  }

  const InitialState &state() const { return state_; }

 private:
  const ExperimentConfig &cfg_;
  InitialState state_;
  std::optional<DlmStepper> stepper_;
};

bool is_numerical(const std::exception &e) {
  return dynamic_cast<const StepRejected *>(&e) != nullptr ||
         dynamic_cast<const EigenSolverError *>(&e) != nullptr ||
         dynamic_cast<const SingularMatrixError *>(&e) != nullptr ||
         dynamic_cast<const StructureError *>(&e) != nullptr;
}

void prepare_dir(const std::filesystem::path &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error(fmt::format("cannot create {}", dir.string()));
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t index) {
  return splitmix64(splitmix64(seed ^ splitmix64(stream)) + index);
}

std::vector<ComplexMatrix> near_consensus_matrices(int d, int n,
                                                   double diameter,
                                                   std::uint64_t seed) {
  const ComplexMatrix base = random_unitary(d, derive_seed(seed, 1, 0));
  std::vector<ComplexMatrix> gens;
  double largest = 0.0;
  for (int i = 0; i < n; ++i) {
    gens.push_back(Complex(0.0, 1.0) *
                   random_hermitian(d, derive_seed(seed, 2, static_cast<std::uint64_t>(i))));
    largest = std::max(largest, gens.back().norm());
  }
  for (auto &g : gens) g /= largest;
  const auto at = [&](double s) {
    std::vector<ComplexMatrix> out;
    for (const auto &g : gens) out.push_back(expm_skew_hermitian(s * g) * base);
    return out;
  };
  return at(solve_scale([&](double s) { return matrix_diameter(at(s)); },
                        diameter));
}

std::vector<RealVector> near_consensus_points(int d, int n, double diameter,
                                              std::uint64_t seed) {
  const RealVector base = random_unit_vector(d, derive_seed(seed, 1, 0));
  std::vector<RealVector> dirs;
  for (int i = 0; i < n; ++i) {
    std::mt19937_64 gen(derive_seed(seed, 2, static_cast<std::uint64_t>(i)));
    std::normal_distribution<double> normal(0.0, 1.0);
    RealVector g(d);
    for (int k = 0; k < d; ++k) g(k) = normal(gen);
    dirs.push_back(g);
  }
  const auto at = [&](double s) {
    std::vector<RealVector> out;
    for (const auto &g : dirs) {
      const RealVector x = base + s * g;
      out.push_back(x / x.norm());
    }
    return out;
  };
  return at(solve_scale([&](double s) { return sphere_diameter(at(s)); },
                        diameter));
}

std::vector<ComplexMatrix> hamiltonians_with_diameter(int d, int n,
                                                      double diameter,
                                                      std::uint64_t seed) {
  auto hs = random_hermitian_zero_trace_sum(d, n, seed);
  const double current = matrix_diameter(hs);
  if (current == 0.0) {
    if (diameter == 0.0) return hs;
    throw std::invalid_argument("ensemble has diameter 0 and cannot be rescaled");
  }
  for (auto &hm : hs) hm *= diameter / current;
  return hs;
}

std::vector<RealMatrix> random_zero_sum_skew(int d, int n, std::uint64_t seed,
                                             double scale) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<RealMatrix> out;
  RealMatrix mean = RealMatrix::Zero(d, d);
  for (int k = 0; k < n; ++k) {
    RealMatrix a(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) a(i, j) = normal(gen);
    }
    out.push_back(0.5 * (a - a.transpose()));
    mean += out.back();
  }
  mean /= static_cast<double>(n);
  for (auto &w : out) w = scale * (w - mean);
  return out;
}

InitialState build_initial_state(const ExperimentConfig &cfg) {
  try {
    if (is_matrix_model(cfg.model)) {
      UnitaryEnsemble ens;
      ens.kappa = cfg.kappa;
      ens.h = cfg.h;
      ens.scheme = cfg.model == ModelKind::DlmB   ? Scheme::LieTrotter
                   : cfg.model == ModelKind::DlmC ? Scheme::Strang
                                                  : Scheme::LieGroup;
      ens.matrices = build_matrices(cfg);
      ens.hamiltonians = build_hamiltonians(cfg);
      validate(ens);
      return ens;
    }
    if (cfg.model == ModelKind::Kuramoto) return build_kuramoto(cfg);
    SphereEnsemble ens;
    ens.kappa = cfg.kappa;
    ens.h = cfg.h;
    ens.points = build_points(cfg);
    ens.omegas = build_omegas(cfg);
    validate(ens);
    return ens;
  } catch (const ConfigError &) {
    throw;
  } catch (const std::exception &e) {
    throw ConfigError("init", e.what());
  }
}

std::optional<Theorem> applicable_theorem(ModelKind model,
                                          bool hamiltonians_vanish,
                                          bool paired) {
  switch (model) {
    case ModelKind::Sphere:
    case ModelKind::Kuramoto:
      return Theorem::T3_1;
    case ModelKind::DlmA:
    case ModelKind::DlmB:
    case ModelKind::DlmC:
      if (hamiltonians_vanish && !paired) return Theorem::T5_1;
      if (model == ModelKind::DlmB) return paired ? Theorem::T6_1 : Theorem::T6_2;
      if (model == ModelKind::DlmC) return Theorem::T6_3;
      return std::nullopt;
    case ModelKind::ContinuousSphere:
    case ModelKind::ContinuousMatrix:
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

std::optional<FrameworkReport> framework_for(const ExperimentConfig &cfg,
                                             const InitialState &state,
                                             const UnitaryEnsemble *tilde) {
  if (const auto *u = std::get_if<UnitaryEnsemble>(&state)) {
    const bool vanish = hamiltonian_diameter(*u) == 0.0 &&
                        std::all_of(u->hamiltonians.begin(), u->hamiltonians.end(),
                                    [](const ComplexMatrix &m) { return m.norm() == 0.0; });
    const auto th = applicable_theorem(cfg.model, vanish, tilde != nullptr);
    if (!th) return std::nullopt;
    return check_framework(*th, with_framework(summarize(*u, tilde), cfg.framework));
  }
  const auto th = applicable_theorem(cfg.model, true);
  if (!th) return std::nullopt;
  if (const auto *s = std::get_if<SphereEnsemble>(&state)) {
    return check_framework(*th, with_framework(summarize(*s), cfg.framework));
  }
  const auto &k = std::get<KuramotoState>(state);
  return check_framework(
      *th, with_framework(summarize(embed_circle(k.thetas, k.nus, k.kappa, k.h)),
                          cfg.framework));
}

json framework_json(const std::optional<FrameworkReport> &report,
                    const ExperimentConfig &cfg) {
  if (report) return to_json(*report);
  return {{"theorem", nullptr},
          {"notes", json::array({fmt::format("no theorem framework applies to "
                                             "model '{}'",
                                             to_string(cfg.model))})}};
}

}  // namespace

RunResult run_experiment(const ExperimentConfig &cfg, const RunOptions &opts) {
  RunResult result;
  InitialState initial;
  try {
    initial = build_initial_state(cfg);
  } catch (const ConfigError &e) {
    result.exit_code = kExitConfig;
    result.message = e.what();
    return result;
  }
  prepare_dir(opts.output_dir);
  result.framework = framework_for(cfg, initial, nullptr);
  if (cfg.wants(Output::FrameworkReportJson)) {
    write_json(opts.output_dir / "framework_report.json",
               framework_json(result.framework, cfg));
  }

  std::optional<CsvWriter> csv;
  if (cfg.wants(Output::DiagnosticsCsv)) {
    csv.emplace(opts.output_dir / "diagnostics.csv",
                csv_header(cfg.model, cfg.record_timing));
  }
  const auto timing = [&](Clock::time_point t0) -> std::optional<long long> {
    if (!cfg.record_timing) return std::nullopt;
    return elapsed_ns(t0);
  };

  Runner runner(cfg, std::move(initial));
  auto t0 = Clock::now();
  result.final_row = runner.row();
  if (csv) csv->row(0, result.final_row, timing(t0));
  for (long long n = 1; n <= cfg.steps; ++n) {
    t0 = Clock::now();
    try {
      runner.step();
    } catch (const std::exception &e) {
      if (!is_numerical(e)) throw;
      result.exit_code = kExitNumerical;
      result.message = fmt::format("step {} failed: {}", n, e.what());
      if (csv) csv->trailer(fmt::format("aborted at step {}: {}", n, e.what()));
      break;
    }
    result.final_row = runner.row();
    result.steps_completed = n;
    if (csv) csv->row(n, result.final_row, timing(t0));
  }
  if (cfg.wants(Output::FinalStateJson)) {
    write_json(opts.output_dir / "final_state.json",
               state_json(cfg, result.steps_completed, runner.state()));
  }
  return result;
}

RunResult pair_run(const ExperimentConfig &a, const ExperimentConfig &b,
                   const RunOptions &opts) {
  RunResult result;
  const auto fail = [&](const std::string &msg) {
    result.exit_code = kExitConfig;
    result.message = msg;
    return result;
  };
  if (a.model != b.model) return fail("pair: models differ");
  if (!is_matrix_model(a.model)) {
    return fail(fmt::format("pair: model '{}' has no relative-position metric",
                            to_string(a.model)));
  }
  if (a.d != b.d || a.n != b.n) return fail("pair: shapes (d, N) differ");
  if (a.kappa != b.kappa || a.h != b.h) return fail("pair: kappa or h differ");
  if (a.steps != b.steps) return fail("pair: step counts differ");

  UnitaryEnsemble ua;
  UnitaryEnsemble ub;
  try {
    ua = std::get<UnitaryEnsemble>(build_initial_state(a));
    ub = std::get<UnitaryEnsemble>(build_initial_state(b));
  } catch (const ConfigError &e) {
    return fail(e.what());
  }
  for (std::size_t i = 0; i < ua.size(); ++i) {
    if (ua.hamiltonians[i] != ub.hamiltonians[i]) {
      return fail("pair: Hamiltonians differ between the two configurations");
    }
  }

  prepare_dir(opts.output_dir);
  result.framework = framework_for(a, ua, &ub);
  if (a.wants(Output::FrameworkReportJson)) {
    write_json(opts.output_dir / "framework_report.json",
               framework_json(result.framework, a));
  }
  std::vector<std::string> header{"n", "diameter_a", "diameter_b",
                                  "unitarity_defect", "relative_distance"};
  if (a.record_timing) header.push_back("wall_clock_ns");
  std::optional<CsvWriter> csv;
  if (a.wants(Output::DiagnosticsCsv)) {
    csv.emplace(opts.output_dir / "pair_diagnostics.csv", header);
  }
  const auto row = [&] {
    return std::vector<double>{
        matrix_diameter(ua), matrix_diameter(ub),
        std::max(unitarity_defect(ua), unitarity_defect(ub)),
        relative_position_distance(ua, ub)};
  };
  const auto timing = [&](Clock::time_point t0) -> std::optional<long long> {
    if (!a.record_timing) return std::nullopt;
    return elapsed_ns(t0);
  };

  std::optional<DlmStepper> stepper;
  if (a.model != ModelKind::ContinuousMatrix) stepper.emplace(ua);
  auto t0 = Clock::now();
  result.final_row = row();
  if (csv) csv->row(0, result.final_row, timing(t0));
  for (long long n = 1; n <= a.steps; ++n) {
    t0 = Clock::now();
    try {
      if (stepper) {
        ua = stepper->step(ua);
        ub = stepper->step(ub);
      } else {
        ua = continuous_evolve(ua, a.h, a.continuous);
        ub = continuous_evolve(ub, a.h, a.continuous);
      }
    } catch (const std::exception &e) {
      if (!is_numerical(e)) throw;
      result.exit_code = kExitNumerical;
      result.message = fmt::format("step {} failed: {}", n, e.what());
      if (csv) csv->trailer(fmt::format("aborted at step {}: {}", n, e.what()));
      break;
    }
    result.final_row = row();
    result.steps_completed = n;
    if (csv) csv->row(n, result.final_row, timing(t0));
  }
  if (a.wants(Output::FinalStateJson)) {
    write_json(opts.output_dir / "final_state_a.json",
               state_json(a, result.steps_completed, ua));
    write_json(opts.output_dir / "final_state_b.json",
               state_json(b, result.steps_completed, ub));
  }
  return result;
}

}  // namespace lohe::harness
