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

#include <string>
#include <vector>

#include "lohe/sphere.hpp"
#include "lohe/unitary.hpp"

namespace lohe {

/// Classical RK4 with manifold reprojection. Each interval of length h
/// (taken from the ensemble) is split into substeps_per_h substeps.
struct ContinuousRunConfig {
  int substeps_per_h = 100;
  int reproject_every = 1;
};

void validate(const ContinuousRunConfig &cfg);

/// x_i' = Omega_i x_i + kappa (x_c - <x_i, x_c> x_i)
std::vector<RealVector> continuous_sphere_rhs(const SphereEnsemble &ens);

/// U_i' = (-i H_i + kappa Delta_i) U_i
std::vector<ComplexMatrix> continuous_matrix_rhs(const UnitaryEnsemble &ens);

/// Number of RK4 substeps used for a horizon: ceil(T / h * substeps_per_h),
/// at least one when T > 0.
long long substep_count(double total_time, double h,
                        const ContinuousRunConfig &cfg);

SphereEnsemble continuous_evolve(const SphereEnsemble &ens, double total_time,
                                 const ContinuousRunConfig &cfg = {});
UnitaryEnsemble continuous_evolve(const UnitaryEnsemble &ens,
                                  double total_time,
                                  const ContinuousRunConfig &cfg = {});

struct UniformConvergenceRow {
  double h;
  double sup_distance;
  long long steps;
};

struct UniformConvergenceResult {
  std::vector<UniformConvergenceRow> rows;
  std::vector<std::string> warnings;
};

/// For each h (kappa fixed) steps the discrete scheme round(T/h) times next
/// to the reference flow sampled at t = nh, recording
/// sup_n d(U^h(n), U(nh)). Framework violations are reported as warnings.
UniformConvergenceResult uniform_convergence_experiment(
    const UnitaryEnsemble &initial, Scheme scheme,
    const std::vector<double> &h_values, double horizon_time,
    const ContinuousRunConfig &cfg = {});

}  // namespace lohe
