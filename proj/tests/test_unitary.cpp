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
#include "lohe/unitary.hpp"

using namespace lohe;
using lohe::harness::derive_seed;

namespace {

const Complex kI(0.0, 1.0);

UnitaryEnsemble random_ensemble(int d, int n, double kappa, double h, Scheme s,
                                std::uint64_t seed, bool with_h = true) {
  UnitaryEnsemble e;
  e.kappa = kappa;
  e.h = h;
  e.scheme = s;
  for (int i = 0; i < n; ++i) {
    e.matrices.push_back(random_unitary(d, derive_seed(seed, 1, static_cast<std::uint64_t>(i))));
  }
  e.hamiltonians = with_h ? random_hermitian_zero_trace_sum(d, n, seed)
                          : zero_hamiltonians(d, static_cast<std::size_t>(n));
  return e;
}

double max_gap(const UnitaryEnsemble &a, const UnitaryEnsemble &b) {
  double gap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    gap = std::max(gap, (a.matrices[i] - b.matrices[i]).norm());
  }
  return gap;
}

}  // namespace

TEST_CASE("scheme names") {
  CHECK(to_string(Scheme::LieGroup) == "dlm-a");
  CHECK(parse_scheme("B") == Scheme::LieTrotter);
  CHECK(parse_scheme("dlm-c") == Scheme::Strang);
  CHECK_THROWS(parse_scheme("dlm-d"));
}

TEST_CASE("coupling term") {
  const ComplexMatrix u = random_unitary(3, 4);
  UnitaryEnsemble same;
  same.kappa = 1.0;
  same.h = 0.1;
  same.matrices = {u, u, u};
  same.hamiltonians = zero_hamiltonians(3, 3);
  for (const auto &delta : coupling_deltas(same)) CHECK(delta.norm() <= 1e-15);

  UnitaryEnsemble single = same;
  single.matrices = {u};
  single.hamiltonians = zero_hamiltonians(3, 1);
  CHECK(coupling_delta(single, 0).norm() <= 1e-15);

  const auto e = random_ensemble(3, 5, 1.0, 0.1, Scheme::LieGroup, 21);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const ComplexMatrix delta = coupling_delta(e, i);
    CHECK(skew_hermitian_defect(delta) <= 1e-14);
    double mean = 0.0;
    for (const auto &uk : e.matrices) mean += (uk - e.matrices[i]).norm();
    mean /= static_cast<double>(e.size());
    CHECK(delta.norm() <= mean + 1e-12);
  }
}

TEST_CASE("schemes coincide without Hamiltonians") {
  auto a = random_ensemble(3, 4, 1.0, 0.2, Scheme::LieGroup, 31, false);
  auto b = a;
  b.scheme = Scheme::LieTrotter;
  auto c = a;
  c.scheme = Scheme::Strang;
  for (int n = 0; n < 20; ++n) {
    a = dlm_step(a);
    b = dlm_step(b);
    c = dlm_step(c);
    CHECK(max_gap(a, b) <= 1e-14);
    CHECK(max_gap(a, c) <= 1e-14);
  }
}

TEST_CASE("zero coupling is the free flow") {
  for (Scheme s : {Scheme::LieGroup, Scheme::LieTrotter, Scheme::Strang}) {
    const auto e = random_ensemble(2, 3, 0.0, 0.3, s, 41);
    const auto next = dlm_step(e);
    for (std::size_t i = 0; i < e.size(); ++i) {
      const ComplexMatrix expected =
          expm_skew_hermitian(-kI * e.hamiltonians[i] * e.h) * e.matrices[i];
      CHECK((next.matrices[i] - expected).norm() <= 1e-14);
    }
  }
}

TEST_CASE("one homogeneous step against a fine continuous reference") {
  const double phi = 0.4;
  UnitaryEnsemble e;
  e.kappa = 1.0;
  e.h = 0.3;
  ComplexMatrix u2 = ComplexMatrix::Zero(2, 2);
  u2(0, 0) = std::polar(1.0, phi);
  u2(1, 1) = std::polar(1.0, -phi);
  e.matrices = {identity(2), u2};
  e.hamiltonians = zero_hamiltonians(2, 2);
  const auto next = dlm_step(e);
  const double before = (e.matrices[0] - e.matrices[1]).norm();
  const double after = (next.matrices[0] - next.matrices[1]).norm();
  CHECK(after < before);

  ContinuousRunConfig cfg;
  cfg.substeps_per_h = 10;
  const auto reference = continuous_evolve(e, e.h, cfg);
  CHECK(max_gap(next, reference) <= e.h * e.h);
}

TEST_CASE("diameters and distances") {
  const ComplexMatrix u = random_unitary(2, 8);
  UnitaryEnsemble same;
  same.matrices = {u, u};
  same.hamiltonians = zero_hamiltonians(2, 2);
  CHECK(matrix_diameter(same) == 0.0);
  CHECK(hamiltonian_diameter(same) == 0.0);

  UnitaryEnsemble opposite = same;
  opposite.matrices = {identity(2), ComplexMatrix(-identity(2))};
  CHECK(matrix_diameter(opposite) == doctest::Approx(2.0 * std::sqrt(2.0)));

  const auto a = random_ensemble(3, 4, 1.0, 0.1, Scheme::LieTrotter, 50);
  CHECK(relative_position_distance(a, a) == 0.0);
  const auto translated = right_translate(a, random_unitary(3, 51));
  CHECK(relative_position_distance(a, translated) <= 1e-14);
  const auto b = random_ensemble(3, 4, 1.0, 0.1, Scheme::LieTrotter, 52);
  const double dab = relative_position_distance(a, b);
  CHECK(dab == doctest::Approx(relative_position_distance(b, a)));
  CHECK(dab <= matrix_diameter(a) + matrix_diameter(b) + 1e-14);

  auto c = random_ensemble(3, 5, 1.0, 0.1, Scheme::LieTrotter, 53);
  CHECK_THROWS(relative_position_distance(a, c));
}

TEST_CASE("steps commute with common right translation") {
  for (Scheme s : {Scheme::LieGroup, Scheme::LieTrotter, Scheme::Strang}) {
    const auto e = random_ensemble(3, 4, 1.0, 0.2, s, 60);
    const ComplexMatrix l = random_unitary(3, 61);
    const auto lhs = dlm_step(right_translate(e, l));
    const auto rhs = right_translate(dlm_step(e), l);
    CHECK(max_gap(lhs, rhs) <= 1e-13);
  }
}

TEST_CASE("d = 1 Lie group step is linear Kuramoto") {
  CHECK(dlm_a_kuramoto_reduction({0.5, 0.5}, {0.0, 0.0}, 1.0, 0.4) <= 1e-15);
  const std::vector<double> thetas{-2.0, -0.4, 0.3, 1.1, 2.9};
  const std::vector<double> nus{0.3, -0.1, 0.05, -0.2, -0.05};
  CHECK(dlm_a_kuramoto_reduction(thetas, nus, 1.0, 0.4) <= 1e-12);
}

TEST_CASE("unitarity is preserved") {
  for (Scheme s : {Scheme::LieGroup, Scheme::LieTrotter, Scheme::Strang}) {
    auto e = random_ensemble(4, 3, 2.0, 0.05, s, 70);
    const DlmStepper stepper(e);
    for (int n = 0; n < 500; ++n) e = stepper.step(e);
    CHECK(unitarity_defect(e) <= 1e-10 * 4);
    CHECK(hamiltonian_sum_defect(e) <= 1e-13);
  }
}

TEST_CASE("invalid ensembles are rejected") {
  auto e = random_ensemble(2, 3, 1.0, 0.1, Scheme::LieGroup, 80);
  e.matrices[0] *= 1.1;
  CHECK_THROWS(validate(e));
  auto f = random_ensemble(2, 3, 1.0, 0.1, Scheme::LieGroup, 80);
  f.hamiltonians[0](0, 1) += 1.0;
  CHECK_THROWS(validate(f));
}

TEST_CASE("Strang intermediate state") {
  const auto e = random_ensemble(2, 3, 1.0, 0.2, Scheme::Strang, 90);
  const auto v = strang_intermediate_state(e);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const ComplexMatrix expected =
        expm_skew_hermitian(-kI * e.hamiltonians[i] * (e.h / 2)) * e.matrices[i];
    CHECK((v[i] - expected).norm() <= 1e-14);
  }
}

TEST_CASE("state locking detection") {
  const auto e = random_ensemble(2, 3, 1.0, 0.1, Scheme::LieGroup, 100);
  std::vector<UnitaryEnsemble> constant(10, e);
  const auto fixed = state_locking_detector(constant, 5, 1e-12);
  CHECK(fixed.locked);
  CHECK(fixed.trailing_increment == 0.0);

  auto homogeneous = lohe::harness::near_consensus_matrices(2, 4, 0.5, 3);
  UnitaryEnsemble h0;
  h0.kappa = 1.0;
  h0.h = 0.3;
  h0.matrices = homogeneous;
  h0.hamiltonians = zero_hamiltonians(2, 4);
  LockingMonitor monitor(50, 1e-8);
  std::vector<UnitaryEnsemble> history{h0};
  monitor.push(h0);
  for (int n = 0; n < 400; ++n) {
    h0 = dlm_step(h0);
    history.push_back(h0);
    monitor.push(h0);
  }
  const auto report = monitor.report();
  CHECK(report.locked);
  for (const auto &row : report.limits) {
    for (const auto &m : row) CHECK((m - identity(2)).norm() <= 1e-8);
  }
  const auto batch = state_locking_detector(history, 50, 1e-8);
  CHECK(batch.locked);
  CHECK(batch.trailing_increment == doctest::Approx(report.trailing_increment));

  auto drifting = random_ensemble(2, 3, 0.01, 0.1, Scheme::LieTrotter, 101);
  drifting.hamiltonians = lohe::harness::hamiltonians_with_diameter(2, 3, 5.0, 102);
  LockingMonitor loose(20, 1e-8);
  for (int n = 0; n < 100; ++n) {
    loose.push(drifting);
    drifting = dlm_step(drifting);
  }
  CHECK_FALSE(loose.report().locked);
}
