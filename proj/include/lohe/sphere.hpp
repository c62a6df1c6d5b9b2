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

#include <cstddef>
#include <vector>

#include "lohe/linalg.hpp"

namespace lohe {

/// N points on the unit sphere S^{d-1} with per-agent natural frequency
/// matrices (real skew-symmetric), coupling strength and time step.
struct SphereEnsemble {
  std::vector<RealVector> points;
  std::vector<RealMatrix> omegas;
  double kappa = 0.0;
  double h = 0.0;

  std::size_t size() const { return points.size(); }
  int dim() const {
    return points.empty() ? 0 : static_cast<int>(points.front().size());
  }
};

/// Throws std::invalid_argument on shape mismatch, non-unit points (1e-12),
/// non-skew omegas (1e-12), kappa < 0 or h <= 0.
void validate(const SphereEnsemble &ens);

/// Zero frequency matrices for n agents in dimension d.
std::vector<RealMatrix> zero_omegas(int d, std::size_t n);

/// (1/N) sum_j x_j, accumulated in index order.
RealVector sphere_centroid(const SphereEnsemble &ens);

/// One predictor-corrector step. Throws StepRejected when a predictor vector
/// is zero or non-finite.
SphereEnsemble sphere_step(const SphereEnsemble &ens);

/// Inner product <x_i(n+1), x_j(n+1)> evaluated in closed form from the
/// current state. Requires every omega to vanish.
double sphere_inner_product_closed_form(const SphereEnsemble &ens,
                                        std::size_t i, std::size_t j);

struct SphereDiagnostics {
  long long n = 0;
  double rho = 0.0;
  double min_pair_inner = 1.0;
  double min_center_inner = 1.0;
  double diameter = 0.0;
};

SphereDiagnostics sphere_diagnostics(const SphereEnsemble &ens,
                                     long long n = 0);

/// max_i | ||x_i|| - 1 |
double sphere_norm_defect(const SphereEnsemble &ens);

enum class KuramotoUpdate { Arctan, Linear };

/// theta_i += arctan(nu_i h + (kappa h / N) sum_j sin(theta_j - theta_i)).
/// The Linear variant drops the arctan.
std::vector<double> kuramoto_step(const std::vector<double> &thetas,
                                  const std::vector<double> &nus,
                                  double kappa, double h,
                                  KuramotoUpdate update = KuramotoUpdate::Arctan);

/// Points (cos theta_i, sin theta_i) with omega_i = [[0, -nu_i], [nu_i, 0]].
SphereEnsemble embed_circle(const std::vector<double> &thetas,
                            const std::vector<double> &nus, double kappa,
                            double h);

/// atan2 of each point; requires d = 2.
std::vector<double> extract_angles(const SphereEnsemble &ens);

/// |a - b| reduced to [0, pi].
double angular_distance(double a, double b);

/// One sphere step on the embedded circle against one arctan Kuramoto step;
/// returns the largest angular discrepancy.
double sphere_to_kuramoto_roundtrip(const std::vector<double> &thetas,
                                    const std::vector<double> &nus,
                                    double kappa, double h);

}  // namespace lohe
