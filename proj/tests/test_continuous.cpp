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

#include <doctest.h>

#include <cmath>

#include "lohe/continuous.hpp"
#include "lohe/harness/experiment.hpp"

using namespace lohe;
using lohe::harness::derive_seed;

namespace {

const Complex kI(0.0, 1.0);

SphereEnsemble sphere_ensemble(int d, int n, std::uint64_t seed, bool rotating) {
  SphereEnsemble e;
  e.kappa = 1.0;
  e.h = 0.1;
  for (int i = 0; i < n; ++i) {
    e.points.push_back(random_unit_vector(d, derive_seed(seed, 1, static_cast<std::uint64_t>(i))));
  }
  e.omegas = rotating ? lohe::harness::random_zero_sum_skew(d, n, seed, 1.0)
                      : zero_omegas(d, static_cast<std::size_t>(n));
  return e;
}

UnitaryEnsemble matrix_ensemble(int d, int n, double kappa, std::uint64_t seed) {
  UnitaryEnsemble e;
  e.kappa = kappa;
  e.h = 0.1;
  for (int i = 0; i < n; ++i) {
    e.matrices.push_back(random_unitary(d, derive_seed(seed, 1, static_cast<std::uint64_t>(i))));
  }
  e.hamiltonians = random_hermitian_zero_trace_sum(d, n, seed);
  return e;
}

double gap(const UnitaryEnsemble &a, const UnitaryEnsemble &b) {
  double g = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    g = std::max(g, (a.matrices[i] - b.matrices[i]).norm());
  }
  return g;
}

}  // namespace

TEST_CASE("sphere vector field") {
  const RealVector x = random_unit_vector(3, 1);
  SphereEnsemble consensus;
  consensus.kappa = 1.0;
  consensus.h = 0.1;
  consensus.points = {x, x, x};
  consensus.omegas = zero_omegas(3, 3);
  for (const auto &v : continuous_sphere_rhs(consensus)) CHECK(v.norm() <= 1e-15);

  auto single = sphere_ensemble(4, 1, 2, true);
  single.omegas[0] = RealMatrix::Zero(4, 4);
  single.omegas[0](0, 1) = -0.7;
  single.omegas[0](1, 0) = 0.7;
  const auto rhs = continuous_sphere_rhs(single);
  CHECK((rhs[0] - single.omegas[0] * single.points[0]).norm() <= 1e-15);

  const auto e = sphere_ensemble(5, 7, 3, true);
  const auto field = continuous_sphere_rhs(e);
  for (std::size_t i = 0; i < e.size(); ++i) {
    CHECK(std::abs(field[i].dot(e.points[i])) <= 1e-12);
  }
}

TEST_CASE("matrix vector field") {
  const ComplexMatrix u = random_unitary(2, 4);
  UnitaryEnsemble consensus;
  consensus.kappa = 1.0;
  consensus.h = 0.1;
  consensus.matrices = {u, u};
  consensus.hamiltonians = zero_hamiltonians(2, 2);
  for (const auto &v : continuous_matrix_rhs(consensus)) CHECK(v.norm() <= 1e-15);

  const auto free = matrix_ensemble(3, 3, 0.0, 5);
  const auto rhs = continuous_matrix_rhs(free);
  for (std::size_t i = 0; i < free.size(); ++i) {
    CHECK((rhs[i] - (-kI * free.hamiltonians[i] * free.matrices[i])).norm() <= 1e-15);
  }

  const auto e = matrix_ensemble(3, 4, 1.5, 6);
  const auto field = continuous_matrix_rhs(e);
  for (std::size_t i = 0; i < e.size(); ++i) {
    // U^dagger dU/dt is skew-Hermitian on the tangent space.
    CHECK(skew_hermitian_defect(e.matrices[i].adjoint() * field[i]) <= 1e-12);
  }
}

TEST_CASE("substep counts") {
  ContinuousRunConfig cfg;
  CHECK(substep_count(1.0, 0.1, cfg) == 1000);
  CHECK(substep_count(0.0, 0.1, cfg) == 0);
  cfg.substeps_per_h = 0;
  CHECK_THROWS(validate(cfg));
}

TEST_CASE("zero horizon leaves the state unchanged") {
  const auto e = matrix_ensemble(2, 3, 1.0, 7);
  CHECK(gap(continuous_evolve(e, 0.0), e) == 0.0);
  const auto s = sphere_ensemble(3, 3, 8, false);
  const auto t = continuous_evolve(s, 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(t.points[i] == s.points[i]);
}

TEST_CASE("homogeneous continuous run contracts the diameter") {
  UnitaryEnsemble e;
  e.kappa = 1.0;
  e.h = 0.1;
  e.matrices = lohe::harness::near_consensus_matrices(2, 5, 1.0, 9);
  e.hamiltonians = zero_hamiltonians(2, 5);
  double diam = matrix_diameter(e);
  for (int k = 0; k < 50; ++k) {
    e = continuous_evolve(e, e.h);
    const double next = matrix_diameter(e);
    CHECK(next < diam);
    diam = next;
  }
}

TEST_CASE("reference integrator is fourth order") {
  auto e = matrix_ensemble(2, 3, 1.0, 10);
  e.h = 0.5;
  ContinuousRunConfig cfg;
  cfg.reproject_every = 1 << 20;
  auto endpoint = [&](int sub) {
    cfg.substeps_per_h = sub;
    return continuous_evolve(e, 1.0, cfg);
  };
  const auto coarse = endpoint(4);
  const auto mid = endpoint(8);
  const auto fine = endpoint(16);
  const double ratio = gap(coarse, mid) / gap(mid, fine);
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("first integrals along continuous runs") {
  const auto e = matrix_ensemble(3, 4, 1.0, 11);
  const auto out = continuous_evolve(e, 1.0);
  double drift = 0.0;
  for (const auto &u : out.matrices) {
    drift = std::max(drift, (u * u.adjoint() - identity(3)).norm());
  }
  CHECK(drift <= 1e-10);

  const auto s = continuous_evolve(sphere_ensemble(4, 6, 12, true), 1.0);
  CHECK(sphere_norm_defect(s) <= 1e-12);
}

TEST_CASE("uniform convergence in the step size") {
  UnitaryEnsemble still;
  still.kappa = 0.0;
  still.h = 0.1;
  still.matrices = {random_unitary(2, 1), random_unitary(2, 2)};
  still.hamiltonians = zero_hamiltonians(2, 2);
  const auto trivial =
      uniform_convergence_experiment(still, Scheme::LieTrotter, {0.1, 0.05}, 1.0);
  for (const auto &r : trivial.rows) CHECK(r.sup_distance <= 1e-12);

  UnitaryEnsemble e;
  e.kappa = 5.0;
  e.h = 0.02;
  e.hamiltonians = lohe::harness::hamiltonians_with_diameter(2, 4, 0.25, 64);
  e.matrices = lohe::harness::near_consensus_matrices(2, 4, 0.3, 65);
  const auto result =
      uniform_convergence_experiment(e, Scheme::LieTrotter, {0.02, 0.01, 0.005}, 4.0);
  CHECK(result.warnings.empty());
  REQUIRE(result.rows.size() == 3);
  CHECK(result.rows[1].sup_distance < result.rows[0].sup_distance);
  CHECK(result.rows[2].sup_distance < result.rows[1].sup_distance);
  const double ratio = result.rows[0].sup_distance / result.rows[1].sup_distance;
  CHECK(ratio >= 1.5);
  CHECK(ratio <= 2.5);

  CHECK_THROWS(uniform_convergence_experiment(e, Scheme::LieTrotter, {0.01, 0.02}, 1.0));
}
