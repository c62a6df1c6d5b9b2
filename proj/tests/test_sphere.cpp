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
#include <numbers>

#include "lohe/harness/experiment.hpp"
#include "lohe/sphere.hpp"

using namespace lohe;

namespace {

RealVector vec(std::initializer_list<double> xs) {
  RealVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (double x : xs) v(k++) = x;
  return v;
}

SphereEnsemble make(std::vector<RealVector> pts, double kappa, double h) {
  SphereEnsemble e;
  const int d = static_cast<int>(pts.front().size());
  e.omegas = zero_omegas(d, pts.size());
  e.points = std::move(pts);
  e.kappa = kappa;
  e.h = h;
  return e;
}

SphereEnsemble random_ensemble(int d, int n, double kappa, double h, std::uint64_t seed) {
  std::vector<RealVector> pts;
  for (int i = 0; i < n; ++i) pts.push_back(random_unit_vector(d, seed + static_cast<std::uint64_t>(i)));
  return make(std::move(pts), kappa, h);
}

// Closed-form update of <x_i, x_j> written independently of the library.
double closed_form(double a_i, double a_j, double b, double gamma) {
  const double g2 = gamma * gamma;
  const double num = b + gamma * (a_i + a_j) * (1.0 - b) +
                     g2 * (1.0 - a_i * a_i - a_j * a_j + a_i * a_j * b);
  return num / (std::sqrt(1.0 + g2 * (1.0 - a_i * a_i)) *
                std::sqrt(1.0 + g2 * (1.0 - a_j * a_j)));
}

}  // namespace

TEST_CASE("fixed points of the sphere step") {
  auto single = make({random_unit_vector(3, 1)}, 1.0, 0.5);
  CHECK((sphere_step(single).points[0] - single.points[0]).norm() <= 1e-15);

  const RealVector x = random_unit_vector(4, 2);
  auto consensus = make({x, x, x}, 2.0, 0.3);
  const auto next = sphere_step(consensus);
  for (const auto &p : next.points) CHECK((p - x).norm() <= 1e-15);
}

TEST_CASE("two agents on the circle move closer") {
  const double phi = 0.5;
  auto e = make({vec({1.0, 0.0}), vec({std::cos(phi), std::sin(phi)})}, 1.0, 0.5);
  const auto next = sphere_step(e);
  const double inner = next.points[0].dot(next.points[1]);
  CHECK(inner > std::cos(phi));

  const RealVector xc = sphere_centroid(e);
  const double rho = xc.norm();
  const double a = e.points[0].dot(xc) / rho;
  const double b = e.points[1].dot(xc) / rho;
  const double predicted = closed_form(a, b, std::cos(phi), 0.5 * rho);
  CHECK(std::abs(inner - predicted) <= 1e-14);
}

TEST_CASE("closed-form inner products") {
  auto e = random_ensemble(4, 5, 1.0, 0.8, 40);
  const auto next = sphere_step(e);
  for (std::size_t i = 0; i < e.size(); ++i) {
    CHECK(sphere_inner_product_closed_form(e, i, i) == 1.0);
    for (std::size_t j = 0; j < e.size(); ++j) {
      CHECK(std::abs(sphere_inner_product_closed_form(e, i, j) -
                     next.points[i].dot(next.points[j])) <= 1e-12);
    }
  }
  const RealVector x = random_unit_vector(3, 3);
  auto same = make({x, x, x, x}, 1.0, 0.4);
  CHECK(sphere_inner_product_closed_form(same, 0, 3) == doctest::Approx(1.0).epsilon(1e-15));

  auto rotating = e;
  rotating.omegas = lohe::harness::random_zero_sum_skew(4, 5, 1, 1.0);
  CHECK_THROWS(sphere_inner_product_closed_form(rotating, 0, 1));
}

TEST_CASE("sphere diagnostics") {
  const RealVector x = random_unit_vector(3, 8);
  auto diag = sphere_diagnostics(make({x, x}, 1.0, 0.1));
  CHECK(diag.rho == doctest::Approx(1.0));
  CHECK(diag.min_pair_inner == doctest::Approx(1.0));
  CHECK(diag.diameter == 0.0);

  diag = sphere_diagnostics(make({vec({0, 0, 1}), vec({0, 0, -1})}, 1.0, 0.1));
  CHECK(diag.rho == 0.0);
  CHECK(diag.min_pair_inner == -1.0);
  CHECK(diag.diameter == doctest::Approx(2.0));

  diag = sphere_diagnostics(make({vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})}, 1.0, 0.1));
  CHECK(diag.rho == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(diag.min_pair_inner == 0.0);
  CHECK(diag.diameter == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("invalid sphere ensembles are rejected") {
  auto e = random_ensemble(3, 3, 1.0, 0.1, 5);
  e.points[1] *= 1.01;
  CHECK_THROWS(validate(e));
  auto f = random_ensemble(3, 3, 1.0, 0.1, 5);
  f.omegas[0](0, 1) = 1.0;
  CHECK_THROWS(validate(f));
  auto g = random_ensemble(1, 3, 1.0, 0.1, 5);
  CHECK_THROWS(validate(g));
}

TEST_CASE("Kuramoto updates") {
  const std::vector<double> same(4, 0.7);
  const std::vector<double> zeros(4, 0.0);
  CHECK(kuramoto_step(same, zeros, 1.0, 0.2) == same);

  const double nu = 0.9;
  const double h = 0.3;
  const auto one = kuramoto_step({0.2}, {nu}, 5.0, h);
  CHECK(one[0] == doctest::Approx(0.2 + std::atan(nu * h)).epsilon(1e-15));

  const std::vector<double> thetas{0.0, 1.0};
  const auto next = kuramoto_step(thetas, {0.0, 0.0}, 1.0, 0.5);
  const auto sphere = sphere_step(embed_circle(thetas, {0.0, 0.0}, 1.0, 0.5));
  const auto phases = extract_angles(sphere);
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    CHECK(angular_distance(next[i], phases[i]) <= 1e-14);
  }
  CHECK(next[0] > 0.0);
  CHECK(next[1] < 1.0);
}

TEST_CASE("sphere and Kuramoto roundtrip") {
  CHECK(sphere_to_kuramoto_roundtrip({0.3, 0.3}, {0.0, 0.0}, 0.0, 0.1) == 0.0);
  std::vector<double> thetas;
  std::vector<double> nus;
  for (int i = 0; i < 8; ++i) {
    thetas.push_back(-3.0 + 0.77 * i);
    nus.push_back(0.1 * (i - 3.5));
  }
  CHECK(sphere_to_kuramoto_roundtrip(thetas, nus, 1.0, 1.0) <= 1e-12);
  CHECK(angular_distance(std::numbers::pi - 1e-3, -std::numbers::pi + 1e-3) ==
        doctest::Approx(2e-3));
}

TEST_CASE("sphere step preserves norms and monotone inner products") {
  auto e = make(lohe::harness::near_consensus_points(3, 10, 1.2, 3), 1.0, 1.0);
  auto diag = sphere_diagnostics(e);
  for (int n = 1; n <= 200; ++n) {
    const auto next = sphere_step(e);
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::size_t j = i + 1; j < e.size(); ++j) {
        CHECK(next.points[i].dot(next.points[j]) >= e.points[i].dot(e.points[j]) - 1e-13);
      }
    }
    e = next;
    CHECK(sphere_norm_defect(e) <= 1e-12);
    const auto d = sphere_diagnostics(e, n);
    CHECK(d.rho >= diag.rho - 1e-13);
    diag = d;
  }
  CHECK(diag.diameter < 1e-6);
}
