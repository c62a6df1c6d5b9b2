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
#include <random>

#include "lohe/errors.hpp"
#include "lohe/thresholds.hpp"

using namespace lohe;

namespace {

// e^{c beta} - 1 over 2 beta by its Taylor series.
double series_quotient(double c, double beta, int terms = 50) {
  double sum = 0.0;
  double power = 1.0;  // (c beta)^k / (k + 1)!
  for (int k = 0; k < terms; ++k) {
    power = (k == 0) ? 1.0 : power * c * beta / (k + 1);
    sum += power;
  }
  return c * sum / 2.0;
}

double series_exp(double x, int terms = 50) {
  double sum = 0.0;
  double term = 1.0;
  for (int k = 0; k < terms; ++k) {
    sum += term;
    term *= x / (k + 1);
  }
  return sum;
}

double lambda_series(double beta) {
  return 4.0 - series_exp(2.0 * beta) - series_quotient(2.0, beta);
}

double m_series(double beta) {
  return (6.0 - 2.0 * series_exp(2.0 * beta) - series_quotient(4.0, beta)) / 6.0;
}

const Margin *row(const FrameworkReport &r, std::string_view name) {
  for (const auto &m : r.margins) {
    if (m.condition == name) return &m;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("Lambda and M values") {
  CHECK(lambda_of(0.0) == 2.0);
  CHECK(m_of(0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  for (double beta : {1e-6, 5e-5, 1e-4, 2e-4, 0.01, 0.1, 0.3, 0.45}) {
    CHECK(std::abs(lambda_of(beta) - lambda_series(beta)) <= 1e-14);
    CHECK(std::abs(m_of(beta) - m_series(beta)) <= 1e-14);
  }
  CHECK(lambda_of(0.1) == doctest::Approx(1.671583).epsilon(1e-6));
  CHECK(m_of(0.1) == doctest::Approx(0.183012).epsilon(1e-5));
  CHECK(lambda_of(0.3) == doctest::Approx(0.807683).epsilon(1e-6));
}

TEST_CASE("Lambda and M are strictly decreasing on [0, 0.5]") {
  constexpr int kPoints = 10000;
  double lam = lambda_of(0.0);
  double m = m_of(0.0);
  for (int k = 1; k <= kPoints; ++k) {
    const double beta = 0.5 * k / kPoints;
    const double l_next = lambda_of(beta);
    const double m_next = m_of(beta);
    REQUIRE(l_next < lam);
    REQUIRE(m_next < m);
    lam = l_next;
    m = m_next;
  }
}

TEST_CASE("threshold roots") {
  const double b0 = find_beta0();
  const double b1 = find_beta1();
  CHECK(b0 >= 0.437854);
  CHECK(b0 <= 0.437874);
  CHECK(b1 >= 0.196292);
  CHECK(b1 <= 0.196312);
  CHECK(std::abs(lambda_of(b0)) <= 1e-9);
  CHECK(std::abs(m_of(b1)) <= 1e-9);
  CHECK(b1 < b0);
}

TEST_CASE("M stays below sqrt(Lambda / 3) before beta1") {
  for (int k = 1; k < 1000; ++k) {
    const double beta = find_beta1() * k / 1000.0;
    CHECK(m_of(beta) < std::sqrt(lambda_of(beta) / 3.0));
  }
}

TEST_CASE("half-beta Lambda bound") {
  const double b0 = find_beta0();
  double worst = 0.0;
  for (int k = 1; k <= 100000; ++k) {
    const double beta = b0 * k / 100000.0;
    worst = std::max(worst, 0.5 * beta * lambda_of(beta));
  }
  // Supremum is 0.1320538 at beta = 0.2393; 0.13205 is its truncation.
  CHECK(worst <= 0.132054);
  CHECK(std::abs(worst - 0.13205) < 5e-6);
  CHECK(0.5 * 0.2393 * lambda_of(0.2393) == doctest::Approx(0.1320538).epsilon(1e-6));
  CHECK(0.5 * b0 * lambda_of(b0) <= 1e-9);
  CHECK(0.5 * 1e-12 * lambda_of(1e-12) <= 0.132054);
}

TEST_CASE("cubic roots") {
  const auto flat = cubic_alphas(0.1, 0.0);
  CHECK(flat.alpha1 == 0.0);
  CHECK(flat.alpha2 == doctest::Approx(std::sqrt(lambda_of(0.1))));

  auto residual = [](double beta, double delta, double x) {
    return std::abs(lambda_of(beta) * x - x * x * x - 2.0 * delta);
  };
  const auto r = cubic_alphas(0.1, 0.05);
  CHECK(residual(0.1, 0.05, r.alpha1) <= 1e-10);
  CHECK(residual(0.1, 0.05, r.alpha2) <= 1e-10);

  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const double beta = find_beta0() * (0.01 + 0.98 * unit(gen));
    const double lam = lambda_of(beta);
    const double delta = 0.99 * unit(gen) * std::pow(lam / 3.0, 1.5);
    const auto roots = cubic_alphas(beta, delta);
    CHECK(roots.alpha1 < std::sqrt(lam / 3.0));
    CHECK(std::sqrt(lam / 3.0) < roots.alpha2);
    CHECK(residual(beta, delta, roots.alpha1) <= 1e-10);
    CHECK(residual(beta, delta, roots.alpha2) <= 1e-10);
  }
  CHECK_THROWS_AS(cubic_alphas(0.5, 0.0), HypothesisError);
  CHECK_THROWS_AS(cubic_alphas(0.1, 1.0), HypothesisError);
}

TEST_CASE("contraction constants") {
  const double beta = 0.1;
  CHECK(lie_trotter_contraction(beta, 0.12) ==
        doctest::Approx(std::sqrt(1.0 - 6.0 * beta * (m_of(beta) - 0.12))));
  CHECK(strang_contraction(beta, 0.12, 0.01) ==
        doctest::Approx(std::sqrt(1.0 - 6.0 * beta * (m_of(beta) - 0.14))));
  CHECK(strang_contraction(beta, 0.12, 0.0) == lie_trotter_contraction(beta, 0.12));
  CHECK(aggregation_factor_sq(0.3, 0.5) ==
        doctest::Approx(1.0 - 0.3 * (lambda_of(0.3) - 0.25)));
  CHECK(aggregation_rate(0.3, 0.5) * aggregation_rate(0.3, 0.5) ==
        doctest::Approx(aggregation_factor_sq(0.3, 0.5)));
  CHECK(locking_coupling_bound(0.1) == doctest::Approx(0.149895).epsilon(1e-5));
}

TEST_CASE("framework checks") {
  ConfigSummary t51;
  t51.beta = 0.3;
  t51.initial_diameter = 0.5;
  const auto ok = check_framework(Theorem::T5_1, t51);
  CHECK(ok.satisfied);
  CHECK(ok.verdict == Verdict::Certified);
  const auto *ball = row(ok, "D(0)^2 < Lambda(beta)");
  REQUIRE(ball != nullptr);
  CHECK(ball->slack == doctest::Approx(lambda_of(0.3) - 0.25));

  ConfigSummary t31;
  t31.beta = 1.2;
  t31.initial_min_pair_inner = 0.5;
  const auto bad = check_framework("T3.1", t31);
  CHECK_FALSE(bad.satisfied);
  const auto *kh = row(bad, "beta <= 1");
  REQUIRE(kh != nullptr);
  CHECK(kh->slack == doctest::Approx(-0.2));

  ConfigSummary t62;
  t62.beta = 0.1;
  t62.initial_diameter = 0.1;
  const auto locking = check_framework(Theorem::T6_2, t62);
  CHECK(locking.satisfied);
  CHECK(row(locking, "D(H)/kappa < (Lambda M - M^3)/2")->slack > 0.0);

  ConfigSummary t61;
  t61.beta = 0.1;
  t61.initial_diameter = 0.1;
  t61.initial_diameter_tilde = 0.1;
  CHECK_FALSE(check_framework(Theorem::T6_1, t61).satisfied);
  t61.alpha = 0.12;
  CHECK(check_framework(Theorem::T6_1, t61).satisfied);
  t61.alpha = m_of(0.1);
  CHECK_FALSE(check_framework(Theorem::T6_1, t61).satisfied);

  ConfigSummary t63 = t61;
  t63.alpha = 0.12;
  t63.dh_over_kappa = 0.01;
  const auto strang = check_framework(Theorem::T6_3, t63);
  CHECK(strang.satisfied);
  CHECK(strang.verdict == Verdict::Heuristic);
  t63.dh_over_kappa = 0.04;
  CHECK_FALSE(check_framework(Theorem::T6_3, t63).satisfied);

  CHECK(parse_theorem("P6.2") == Theorem::P6_2);
  CHECK_THROWS(parse_theorem("T9.9"));
}
