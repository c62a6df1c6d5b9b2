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

#include "lohe/continuous.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lohe/framework.hpp"
#include "lohe/thresholds.hpp"

namespace lohe {

namespace {

template <class T>
std::vector<T> axpy(const std::vector<T> &y, double a,
                    const std::vector<T> &k) {
  std::vector<T> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + a * k[i];
  return out;
}

// One classical RK4 step of y' = f(y).
template <class T, class F>
void rk4_step(std::vector<T> &y, double dt, const F &f) {
  const auto k1 = f(y);
  const auto k2 = f(axpy(y, 0.5 * dt, k1));
  const auto k3 = f(axpy(y, 0.5 * dt, k2));
  const auto k4 = f(axpy(y, dt, k3));
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
}

template <class T, class F, class P>
void integrate(std::vector<T> &y, double total_time, long long substeps,
               int reproject_every, const F &f, const P &reproject) {
  const double dt = total_time / static_cast<double>(substeps);
  for (long long s = 1; s <= substeps; ++s) {
    rk4_step(y, dt, f);
    if (s % reproject_every == 0 || s == substeps) reproject(y);
  }
}

void require_time(double total_time) {
  if (!(total_time >= 0.0) || !std::isfinite(total_time)) {
    throw std::invalid_argument(
        "continuous_evolve: total_time must be finite and >= 0");
  }
}

}  // namespace

void validate(const ContinuousRunConfig &cfg) {
  if (cfg.substeps_per_h < 1) {
    throw std::invalid_argument("ContinuousRunConfig: substeps_per_h must be >= 1");
  }
  if (cfg.reproject_every < 1) {
    throw std::invalid_argument("ContinuousRunConfig: reproject_every must be >= 1");
  }
}

std::vector<RealVector> continuous_sphere_rhs(const SphereEnsemble &ens) {
  const RealVector xc = sphere_centroid(ens);
  std::vector<RealVector> out;
  out.reserve(ens.size());
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const RealVector &x = ens.points[i];
    out.push_back(ens.omegas[i] * x + ens.kappa * (xc - x.dot(xc) * x));
  }
  return out;
}

std::vector<ComplexMatrix> continuous_matrix_rhs(const UnitaryEnsemble &ens) {
  const auto deltas = coupling_deltas(ens);
  const Complex minus_i(0.0, -1.0);
  std::vector<ComplexMatrix> out;
  out.reserve(ens.size());
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const ComplexMatrix gen =
        minus_i * ens.hamiltonians[i] + ens.kappa * deltas[i];
    out.push_back(gen * ens.matrices[i]);
  }
  return out;
}

long long substep_count(double total_time, double h,
                        const ContinuousRunConfig &cfg) {
  validate(cfg);
  if (total_time == 0.0) return 0;
  const double raw = total_time / h * static_cast<double>(cfg.substeps_per_h);
  // Absorb representation error so that T = k h gives exactly k intervals.
  const double n = std::ceil(raw * (1.0 - 1e-12));
  return std::max(1LL, static_cast<long long>(n));
}

SphereEnsemble continuous_evolve(const SphereEnsemble &ens, double total_time,
                                 const ContinuousRunConfig &cfg) {
  require_time(total_time);
  const long long substeps = substep_count(total_time, ens.h, cfg);
  SphereEnsemble out = ens;
  if (substeps == 0) return out;
  SphereEnsemble scratch = ens;
  const auto f = [&](const std::vector<RealVector> &y) {
    scratch.points = y;
    return continuous_sphere_rhs(scratch);
  };
  const auto reproject = [](std::vector<RealVector> &y) {
    for (auto &x : y) x /= x.norm();
  };
  integrate(out.points, total_time, substeps, cfg.reproject_every, f,
            reproject);
  return out;
}

UnitaryEnsemble continuous_evolve(const UnitaryEnsemble &ens,
                                  double total_time,
                                  const ContinuousRunConfig &cfg) {
  require_time(total_time);
  const long long substeps = substep_count(total_time, ens.h, cfg);
  UnitaryEnsemble out = ens;
  if (substeps == 0) return out;
  UnitaryEnsemble scratch = ens;
  const auto f = [&](const std::vector<ComplexMatrix> &y) {
    scratch.matrices = y;
    return continuous_matrix_rhs(scratch);
  };
  const auto reproject = [](std::vector<ComplexMatrix> &y) {
    for (auto &u : y) u = project_unitary(u);
  };
  integrate(out.matrices, total_time, substeps, cfg.reproject_every, f,
            reproject);
  return out;
}

UniformConvergenceResult uniform_convergence_experiment(
    const UnitaryEnsemble &initial, Scheme scheme,
    const std::vector<double> &h_values, double horizon_time,
    const ContinuousRunConfig &cfg) {
  validate(cfg);
  if (h_values.empty()) {
    throw std::invalid_argument("uniform_convergence_experiment: no h values");
  }
  for (std::size_t k = 0; k < h_values.size(); ++k) {
    if (!(h_values[k] > 0.0) || (k > 0 && !(h_values[k] < h_values[k - 1]))) {
      throw std::invalid_argument(
          "uniform_convergence_experiment: h values must be positive and "
          "strictly decreasing");
    }
  }
  if (!(horizon_time > 0.0)) {
    throw std::invalid_argument(
        "uniform_convergence_experiment: horizon must be positive");
  }

  UniformConvergenceResult result;
  for (double h : h_values) {
    UnitaryEnsemble discrete = initial;
    discrete.h = h;
    discrete.scheme = scheme;
    validate(discrete);

    const auto report = check_framework(Theorem::T6_2, summarize(discrete));
    if (!report.satisfied) {
      std::string failed;
      for (const auto &m : report.margins) {
        if (!(m.slack >= 0.0)) {
          failed += fmt::format("{}{} (slack {:.3e})",
                                failed.empty() ? "" : "; ", m.condition,
                                m.slack);
        }
      }
      result.warnings.push_back(fmt::format(
          "h = {}: state-locking framework not satisfied: {}", h, failed));
    }

    const auto steps = static_cast<long long>(std::llround(horizon_time / h));
    const DlmStepper stepper(discrete);
    UnitaryEnsemble reference = discrete;
    double sup = 0.0;
    for (long long n = 1; n <= steps; ++n) {
      discrete = stepper.step(discrete);
      reference = continuous_evolve(reference, h, cfg);
      sup = std::max(sup, relative_position_distance(discrete, reference));
    }
    result.rows.push_back({h, sup, steps});
  }
  return result;
}

}  // namespace lohe
