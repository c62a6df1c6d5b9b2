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

#include "lohe/harness/suite.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

#include "lohe/continuous.hpp"
#include "lohe/framework.hpp"
#include "lohe/harness/experiment.hpp"
#include "lohe/harness/io.hpp"
#include "lohe/linalg.hpp"
#include "lohe/sphere.hpp"
#include "lohe/unitary.hpp"

namespace lohe::harness {

using nlohmann::json;

namespace {

// Paired runs accumulate roughly 1e-12 of relative-position roundoff; ratios
// are only compared above this level.
constexpr double kRatioFloor = 1e-10;

void at_most(SuiteReport &r, const std::string &name, double value,
             double bound, std::string detail = {}) {
  r.checks.push_back({name, value <= bound, value, bound, std::move(detail)});
}

void gate(SuiteReport &r, const FrameworkReport &fw) {
  r.frameworks.push_back(fw);
  if (!fw.satisfied) {
    r.skipped = true;
    r.notes.push_back(fmt::format(
        "{} hypotheses not satisfied; dynamics assertions skipped",
        to_string(fw.theorem)));
  }
}

// --- thresholds ------------------------------------------------------------

void suite_thresholds(SuiteReport &r, const SuiteOptions &) {
  const auto t0 = std::chrono::steady_clock::now();
  const double b0 = find_beta0();
  const double b1 = find_beta1();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  at_most(r, "|beta0 - 0.437864|", std::abs(b0 - 0.437864), 1e-5,
          fmt::format("beta0 = {:.10f}", b0));
  at_most(r, "|beta1 - 0.196302|", std::abs(b1 - 0.196302), 1e-5,
          fmt::format("beta1 = {:.10f}", b1));
  at_most(r, "|Lambda(beta0)|", std::abs(lambda_of(b0)), 1e-9);
  at_most(r, "|M(beta1)|", std::abs(m_of(b1)), 1e-9);
  at_most(r, "root finding seconds", secs, 1.0);
}

// --- T3.1 ------------------------------------------------------------------

std::vector<double> pair_inners(const SphereEnsemble &ens) {
  std::vector<double> out;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    for (std::size_t j = i + 1; j < ens.size(); ++j) {
      out.push_back(ens.points[i].dot(ens.points[j]));
    }
  }
  return out;
}

std::vector<double> center_inners(const SphereEnsemble &ens) {
  const RealVector xc = sphere_centroid(ens);
  std::vector<double> out;
  for (const auto &x : ens.points) out.push_back(x.dot(xc));
  return out;
}

void suite_t31(SuiteReport &r, const SuiteOptions &opts) {
  SphereEnsemble ens;
  ens.kappa = 1.0;
  ens.h = opts.beta.value_or(1.0);
  ens.points = near_consensus_points(3, 10, 1.2, 31);
  ens.omegas = zero_omegas(3, 10);
  gate(r, check_framework(Theorem::T3_1, summarize(ens)));
  if (r.skipped) return;

  constexpr long long kBudget = 10000;
  double pair_drop = 0.0;
  double center_drop = 0.0;
  double rho_drop = 0.0;
  double closed_form_gap = 0.0;
  double norm_defect = sphere_norm_defect(ens);
  long long reached = -1;
  auto diag = sphere_diagnostics(ens);
  for (long long n = 0; n < kBudget && reached < 0; ++n) {
    const auto b_prev = pair_inners(ens);
    const auto c_prev = center_inners(ens);
    std::vector<double> predicted;
    for (std::size_t i = 0; i < ens.size(); ++i) {
      for (std::size_t j = i + 1; j < ens.size(); ++j) {
        predicted.push_back(sphere_inner_product_closed_form(ens, i, j));
      }
    }
    const double rho_prev = diag.rho;
    ens = sphere_step(ens);
    diag = sphere_diagnostics(ens, n + 1);
    const auto b_next = pair_inners(ens);
    const auto c_next = center_inners(ens);
    for (std::size_t k = 0; k < b_next.size(); ++k) {
      pair_drop = std::max(pair_drop, b_prev[k] - b_next[k]);
      closed_form_gap = std::max(closed_form_gap, std::abs(predicted[k] - b_next[k]));
    }
    for (std::size_t k = 0; k < c_next.size(); ++k) {
      center_drop = std::max(center_drop, c_prev[k] - c_next[k]);
    }
    rho_drop = std::max(rho_drop, rho_prev - diag.rho);
    norm_defect = std::max(norm_defect, sphere_norm_defect(ens));
    if (diag.diameter < 1e-6) reached = n + 1;
  }
  at_most(r, "max decrease of B_ij per step", pair_drop, 1e-13);
  at_most(r, "max decrease of <x_i, x_c> per step", center_drop, 1e-13);
  at_most(r, "max decrease of rho per step", rho_drop, 1e-13);
  at_most(r, "closed-form inner product vs step", closed_form_gap, 1e-12);
  at_most(r, "sphere norm defect", norm_defect, 1e-12);
  at_most(r, "diameter within 1e4 steps", diag.diameter, 1e-6,
          fmt::format("reached at step {}", reached));
}

// --- T5.1 ------------------------------------------------------------------

std::vector<double> pair_sq_distances(const UnitaryEnsemble &ens) {
  std::vector<double> out;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    for (std::size_t j = i + 1; j < ens.size(); ++j) {
      out.push_back((ens.matrices[i] - ens.matrices[j]).squaredNorm());
    }
  }
  return out;
}

void suite_t51(SuiteReport &r, const SuiteOptions &opts) {
  const double beta = opts.beta.value_or(0.3);
  UnitaryEnsemble ens;
  ens.kappa = 1.0;
  ens.h = beta;
  ens.scheme = Scheme::LieGroup;
  const double lam = beta >= 0.0 ? lambda_of(beta) : 0.0;
  const double d0 = lam > 0.0 ? 0.8 * std::sqrt(lam) : 0.5;
  ens.matrices = near_consensus_matrices(2, 8, d0, 51);
  ens.hamiltonians = zero_hamiltonians(2, 8);
  gate(r, check_framework(Theorem::T5_1, summarize(ens)));
  if (r.skipped) return;

  const double diam0 = matrix_diameter(ens);
  const double factor_sq = aggregation_factor_sq(beta, diam0);
  const double rate = aggregation_rate(beta, diam0);
  const DlmStepper stepper(ens);
  LockingMonitor locking(50, 1e-8);
  locking.push(ens);
  double pair_excess = -1.0;
  double envelope_excess = -1.0;
  double defect = unitarity_defect(ens);
  constexpr long long kSteps = 500;
  for (long long n = 1; n <= kSteps; ++n) {
    const auto before = pair_sq_distances(ens);
    ens = stepper.step(ens);
    const auto after = pair_sq_distances(ens);
    for (std::size_t k = 0; k < after.size(); ++k) {
      pair_excess = std::max(pair_excess, after[k] - factor_sq * before[k]);
    }
    envelope_excess = std::max(
        envelope_excess,
        matrix_diameter(ens) - std::pow(rate, static_cast<double>(n)) * diam0);
    defect = std::max(defect, unitarity_defect(ens));
    locking.push(ens);
  }
  at_most(r, "pairwise contraction excess", pair_excess, 1e-12,
          fmt::format("factor {:.6f}", factor_sq));
  at_most(r, "exponential envelope excess", envelope_excess, 1e-12,
          fmt::format("1 - C = {:.6f}", rate));
  const auto lock = locking.report();
  at_most(r, "trailing relative-position increments", lock.trailing_increment, 1e-8);
  double to_identity = 0.0;
  for (const auto &row : lock.limits) {
    for (const auto &m : row) {
      to_identity = std::max(to_identity, (m - identity(2)).norm());
    }
  }
  at_most(r, "relative positions converge to I", to_identity, 1e-8);
  at_most(r, "unitarity defect", defect, 1e-10 * 2);
}

// --- paired orbital stability (T6.1 / T6.3) --------------------------------

void suite_pair(SuiteReport &r, const SuiteOptions &opts, Scheme scheme,
                Theorem theorem) {
  const double kappa = 1.0;
  const double beta = opts.beta.value_or(0.1);
  const double delta = 0.01;
  const double alpha = 0.12;
  UnitaryEnsemble u;
  u.kappa = kappa;
  u.h = beta / kappa;
  u.scheme = scheme;
  u.hamiltonians = hamiltonians_with_diameter(2, 4, delta * kappa, 61);
  u.matrices = near_consensus_matrices(2, 4, 0.1, 62);
  UnitaryEnsemble v = u;
  v.matrices = near_consensus_matrices(2, 4, 0.1, 63);

  auto summary = summarize(u, &v);
  summary.alpha = alpha;
  gate(r, check_framework(theorem, summary));
  if (r.skipped) return;

  const double c = scheme == Scheme::LieTrotter
                       ? lie_trotter_contraction(beta, alpha)
                       : strang_contraction(beta, alpha, summary.dh_over_kappa);
  const DlmStepper stepper(u);
  constexpr long long kSteps = 5000;
  constexpr long long kTail = 100;
  double worst_ratio = 0.0;
  double tail = 0.0;
  double defect = 0.0;
  double ball = std::max(matrix_diameter(u), matrix_diameter(v));
  double dist = relative_position_distance(u, v);
  std::vector<ComplexMatrix> cross(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    cross[i] = u.matrices[i] * v.matrices[i].adjoint();
  }
  for (long long n = 1; n <= kSteps; ++n) {
    u = stepper.step(u);
    v = stepper.step(v);
    const double next = relative_position_distance(u, v);
    if (dist > kRatioFloor) worst_ratio = std::max(worst_ratio, next / dist);
    dist = next;
    double inc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      ComplexMatrix l = u.matrices[i] * v.matrices[i].adjoint();
      inc = std::max(inc, (l - cross[i]).norm());
      cross[i] = std::move(l);
    }
    if (n > kSteps - kTail) tail += inc;
    ball = std::max({ball, matrix_diameter(u), matrix_diameter(v)});
    defect = std::max({defect, unitarity_defect(u), unitarity_defect(v)});
  }
  if (ball > alpha) {
    r.skipped = true;
    r.notes.push_back(fmt::format(
        "online ball membership failed: diameter {} exceeds alpha {}; "
        "dynamics assertions skipped",
        ball, alpha));
    at_most(r, "online ball membership", ball, alpha);
    r.checks.back().passed = true;
    r.checks.back().detail = "hypothesis, not an assertion";
    return;
  }
  at_most(r, "online ball membership", ball, alpha, "max diameter over the run");
  at_most(r, "per-step ratio d(n+1)/d(n)", worst_ratio, c + 1e-10,
          fmt::format("contraction constant {:.9f}", c));
  at_most(r, "Cauchy tail of U_i V_i^dagger", tail, 1e-8,
          fmt::format("sum of increments over steps {}..{}", kSteps - kTail + 1, kSteps));
  at_most(r, "unitarity defect", defect, 1e-10 * 2);
}

// --- T6.2 ------------------------------------------------------------------

void suite_t62(SuiteReport &r, const SuiteOptions &opts) {
  const double beta = opts.beta.value_or(0.1);
  UnitaryEnsemble u;
  u.kappa = 1.0;
  u.h = beta;
  u.scheme = Scheme::LieTrotter;
  u.hamiltonians = hamiltonians_with_diameter(2, 4, 0.01, 61);
  u.matrices = near_consensus_matrices(2, 4, 0.1, 62);
  gate(r, check_framework(Theorem::T6_2, summarize(u)));
  if (r.skipped) return;

  const DlmStepper stepper(u);
  LockingMonitor locking(100, 1e-8);
  locking.push(u);
  for (long long n = 1; n <= 5000; ++n) {
    u = stepper.step(u);
    locking.push(u);
  }
  at_most(r, "trailing relative-position increments",
          locking.report().trailing_increment, 1e-8, "window 100 at n = 5000");

  UnitaryEnsemble w;
  w.kappa = 5.0;
  w.h = 0.02;
  w.scheme = Scheme::LieTrotter;
  w.hamiltonians = hamiltonians_with_diameter(2, 4, 0.05 * w.kappa, 64);
  w.matrices = near_consensus_matrices(2, 4, 0.3, 65);
  const std::vector<double> hs{0.02, 0.01, 0.005};
  const auto result =
      uniform_convergence_experiment(w, Scheme::LieTrotter, hs, 8.0);
  if (!result.warnings.empty()) {
    r.skipped = true;
    for (const auto &msg : result.warnings) r.notes.push_back(msg);
    r.notes.push_back("uniform convergence assertions skipped");
    return;
  }
  for (std::size_t k = 0; k < result.rows.size(); ++k) {
    r.notes.push_back(fmt::format("h = {}: sup distance {:.6e} over {} steps",
                                  result.rows[k].h, result.rows[k].sup_distance,
                                  result.rows[k].steps));
  }
  for (std::size_t k = 1; k < result.rows.size(); ++k) {
    const double prev = result.rows[k - 1].sup_distance;
    const double cur = result.rows[k].sup_distance;
    const auto label = fmt::format("h {} -> {}", result.rows[k - 1].h, result.rows[k].h);
    at_most(r, "sup distance decreases, " + label, cur, prev);
    const double ratio = prev / cur;
    r.checks.push_back({"first-order ratio in [1.5, 2.5], " + label,
                        ratio >= 1.5 && ratio <= 2.5, ratio, 2.5,
                        "lower bound 1.5"});
  }
}

// --- lemmas ----------------------------------------------------------------

ComplexMatrix gaussian(int d, std::mt19937_64 &gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = Complex(normal(gen), normal(gen));
  }
  return m;
}

class Inequality {
 public:
  explicit Inequality(std::string name) : name_(std::move(name)) {}
  // lhs <= rhs with slack 1e-12 max(1, rhs)
  void observe(double lhs, double rhs) {
    ++trials_;
    excess_ = std::max(excess_, (lhs - rhs) / std::max(1.0, rhs));
  }
  void report(SuiteReport &r) const {
    at_most(r, name_, excess_, 1e-12, fmt::format("{} trials", trials_));
  }

 private:
  std::string name_;
  double excess_ = -std::numeric_limits<double>::infinity();
  long long trials_ = 0;
};

void suite_lemmas(SuiteReport &r, const SuiteOptions &) {
  constexpr int kTrials = 1000;
  std::mt19937_64 gen(71);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Inequality l51a("||AB||_F <= ||A||_op ||B||_F");
  Inequality l51b("||AB||_F <= ||A||_F ||B||_op");
  Inequality l51c("||AU||_F = ||UA||_F = ||A||_F");
  Inequality l52a("||A_1...A_k||_F <= prod ||A_l||_F");
  Inequality l52b("|tr(A_1...A_k)| <= prod ||A_l||_F");
  Inequality l53("||prod A_l - prod B_l||_F <= sum ||A_l - B_l||_F");
  Inequality l54a("||U_iU_j^+ - U_jU_i^+||_F <= 2||U_i - U_j||_F");
  Inequality l54b("||Delta_i||_F <= mean_k ||U_k - U_i||_F");
  Inequality l54c("||Delta_i||_op <= ||U_c||_op <= 1");
  Inequality l54d("||Delta_i - Delta_j||_F <= ||U_i - U_j||_F");
  Inequality l54e("||Delta_i - Delta_j||_op <= ||U_i - U_j||_op");
  Inequality l61("||e^{iA} - e^{iB}||_F <= ||A - B||_F");

  for (int t = 0; t < kTrials; ++t) {
    const int d = 2 + t % 3;
    const auto seed = static_cast<std::uint64_t>(1000 + t);

    const ComplexMatrix a = gaussian(d, gen);
    const ComplexMatrix b = gaussian(d, gen);
    const ComplexMatrix u = random_unitary(d, seed);
    l51a.observe((a * b).norm(), operator_norm(a) * b.norm());
    l51b.observe((a * b).norm(), a.norm() * operator_norm(b));
    const double fa = a.norm();
    l51c.observe(std::max(std::abs((a * u).norm() - fa), std::abs((u * a).norm() - fa)),
                 0.0 * fa);

    const int k = 2 + t % 3;
    ComplexMatrix prod = identity(d);
    double norms = 1.0;
    for (int l = 0; l < k; ++l) {
      const ComplexMatrix f = gaussian(d, gen);
      prod = (prod * f).eval();
      norms *= f.norm();
    }
    l52a.observe(prod.norm(), norms);
    l52b.observe(std::abs(prod.trace()), norms);

    ComplexMatrix pa = identity(d);
    ComplexMatrix pb = identity(d);
    double sum = 0.0;
    for (int l = 0; l < k; ++l) {
      ComplexMatrix fa_l = random_unitary(d, derive_seed(seed, 5, static_cast<std::uint64_t>(l)));
      ComplexMatrix fb_l = random_unitary(d, derive_seed(seed, 6, static_cast<std::uint64_t>(l)));
      if (t % 2 == 1) {
        // Contractions of operator norm <= 1.
        const ComplexMatrix g = gaussian(d, gen);
        fa_l = (unit(gen) / operator_norm(g)) * g;
        fb_l = (unit(gen)) * fb_l;
      }
      pa = (pa * fa_l).eval();
      pb = (pb * fb_l).eval();
      sum += (fa_l - fb_l).norm();
    }
    l53.observe((pa - pb).norm(), sum);

    // Live coupling terms from a short heterogeneous run.
    UnitaryEnsemble ens;
    ens.kappa = 1.0;
    ens.h = 0.1;
    ens.scheme = Scheme::LieTrotter;
    const int n_agents = 2 + t % 5;
    for (int i = 0; i < n_agents; ++i) {
      ens.matrices.push_back(random_unitary(d, derive_seed(seed, 7, static_cast<std::uint64_t>(i))));
    }
    ens.hamiltonians = random_hermitian_zero_trace_sum(d, n_agents, derive_seed(seed, 8, 0));
    const DlmStepper stepper(ens);
    for (int s = 0; s < t % 7; ++s) ens = stepper.step(ens);
    const auto deltas = coupling_deltas(ens);
    const double uc_op = operator_norm(matrix_centroid(ens));
    for (int i = 0; i < n_agents; ++i) {
      const auto &ui = ens.matrices[i];
      double mean_dist = 0.0;
      for (int m = 0; m < n_agents; ++m) mean_dist += (ens.matrices[m] - ui).norm();
      mean_dist /= n_agents;
      l54b.observe(deltas[i].norm(), mean_dist);
      l54c.observe(operator_norm(deltas[i]), uc_op);
      l54c.observe(uc_op, 1.0);
      for (int j = 0; j < n_agents; ++j) {
        const auto &uj = ens.matrices[j];
        l54a.observe((ui * uj.adjoint() - uj * ui.adjoint()).norm(),
                     2.0 * (ui - uj).norm());
        l54d.observe((deltas[i] - deltas[j]).norm(), (ui - uj).norm());
        l54e.observe(operator_norm(deltas[i] - deltas[j]), operator_norm(ui - uj));
      }
    }

    const double sa = 0.1 + 3.0 * unit(gen);
    const double sb = 0.1 + 3.0 * unit(gen);
    const ComplexMatrix ha = sa * random_hermitian(d, derive_seed(seed, 9, 0));
    const ComplexMatrix hb = sb * random_hermitian(d, derive_seed(seed, 9, 1));
    const Complex i_unit(0.0, 1.0);
    const ComplexMatrix ea = expm_skew_hermitian(i_unit * ha);
    const ComplexMatrix eb = expm_skew_hermitian(i_unit * hb);
    l61.observe((ea - eb).norm(), (ha - hb).norm());
  }
  for (const auto *q : {&l51a, &l51b, &l51c, &l52a, &l52b, &l53, &l54a, &l54b,
                        &l54c, &l54d, &l54e, &l61}) {
    q->report(r);
  }
}

// --- scheme coincidence ----------------------------------------------------

void suite_coincidence(SuiteReport &r, const SuiteOptions &opts) {
  UnitaryEnsemble base;
  base.kappa = 1.0;
  base.h = opts.beta.value_or(0.2);
  for (int i = 0; i < 6; ++i) {
    base.matrices.push_back(random_unitary(3, derive_seed(41, 1, static_cast<std::uint64_t>(i))));
  }
  base.hamiltonians = zero_hamiltonians(3, 6);
  std::vector<UnitaryEnsemble> runs;
  std::vector<DlmStepper> steppers;
  for (Scheme s : {Scheme::LieGroup, Scheme::LieTrotter, Scheme::Strang}) {
    runs.push_back(base);
    runs.back().scheme = s;
    steppers.emplace_back(runs.back());
  }
  double gap = 0.0;
  for (int n = 1; n <= 1000; ++n) {
    for (std::size_t k = 0; k < runs.size(); ++k) runs[k] = steppers[k].step(runs[k]);
    for (std::size_t i = 0; i < base.size(); ++i) {
      gap = std::max({gap, (runs[0].matrices[i] - runs[1].matrices[i]).norm(),
                      (runs[0].matrices[i] - runs[2].matrices[i]).norm()});
    }
  }
  at_most(r, "max ||U^A - U^B||, ||U^A - U^C|| over 1e3 steps", gap, 1e-12);
}

// --- Kuramoto reductions ---------------------------------------------------

void suite_kuramoto(SuiteReport &r, const SuiteOptions &) {
  std::mt19937_64 gen(81);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::normal_distribution<double> normal(0.0, 1.0);

  {
    std::vector<double> thetas(8);
    std::vector<double> nus(8);
    for (auto &t : thetas) t = angle(gen);
    for (auto &nu : nus) nu = 0.2 * normal(gen);
    const double kappa = 10.0;
    const double h = 0.1;
    auto sphere = embed_circle(thetas, nus, kappa, h);
    double gap = 0.0;
    for (int n = 1; n <= 1000; ++n) {
      sphere = sphere_step(sphere);
      thetas = kuramoto_step(thetas, nus, kappa, h, KuramotoUpdate::Arctan);
      const auto phases = extract_angles(sphere);
      for (std::size_t i = 0; i < thetas.size(); ++i) {
        gap = std::max(gap, angular_distance(phases[i], thetas[i]));
      }
    }
    at_most(r, "sphere on S^1 vs arctan Kuramoto, 1e3 steps, N = 8", gap, 1e-12);
  }
  {
    double gap = 0.0;
    for (int t = 0; t < 200; ++t) {
      const int n = 1 + t % 8;
      std::vector<double> thetas(n);
      std::vector<double> nus(n);
      for (auto &x : thetas) x = angle(gen);
      for (auto &nu : nus) nu = normal(gen);
      gap = std::max(gap, sphere_to_kuramoto_roundtrip(thetas, nus, 1.0 + t % 3, 0.3));
    }
    at_most(r, "one-step sphere/Kuramoto roundtrip, 200 inputs", gap, 1e-12);
  }
  {
    const int n = 5;
    std::vector<double> thetas(n);
    std::vector<double> nus(n);
    for (auto &x : thetas) x = angle(gen);
    for (auto &nu : nus) nu = 0.2 * normal(gen);
    const double kappa = 1.0;
    const double h = 0.4;
    UnitaryEnsemble ens;
    ens.kappa = kappa;
    ens.h = h;
    for (int i = 0; i < n; ++i) {
      ComplexMatrix u(1, 1);
      u(0, 0) = std::polar(1.0, -thetas[i]);
      ComplexMatrix hm(1, 1);
      hm(0, 0) = nus[i];
      ens.matrices.push_back(u);
      ens.hamiltonians.push_back(hm);
    }
    const DlmStepper stepper(ens);
    double gap = 0.0;
    for (int step = 1; step <= 1000; ++step) {
      ens = stepper.step(ens);
      thetas = kuramoto_step(thetas, nus, kappa, h, KuramotoUpdate::Linear);
      for (int i = 0; i < n; ++i) {
        gap = std::max(gap, angular_distance(-std::arg(ens.matrices[i](0, 0)), thetas[i]));
      }
    }
    at_most(r, "DLM-A at d = 1 vs linear Kuramoto, 1e3 steps, N = 5", gap, 1e-12);
  }
  {
    double gap = 0.0;
    for (int t = 0; t < 200; ++t) {
      const int n = 1 + t % 8;
      std::vector<double> thetas(n);
      std::vector<double> nus(n);
      for (auto &x : thetas) x = angle(gen);
      for (auto &nu : nus) nu = normal(gen);
      gap = std::max(gap, dlm_a_kuramoto_reduction(thetas, nus, 1.0, 0.4));
    }
    at_most(r, "one-step DLM-A/Kuramoto reduction, 200 inputs", gap, 1e-12);
  }
}

// --- structure preservation ------------------------------------------------

void suite_preservation(SuiteReport &r, const SuiteOptions &) {
  constexpr int kSteps = 10000;
  for (Scheme s : {Scheme::LieGroup, Scheme::LieTrotter, Scheme::Strang}) {
    UnitaryEnsemble ens;
    ens.kappa = 1.0;
    ens.h = 0.1;
    ens.scheme = s;
    for (int i = 0; i < 5; ++i) {
      ens.matrices.push_back(random_unitary(3, derive_seed(91, 1, static_cast<std::uint64_t>(i))));
    }
    ens.hamiltonians = random_hermitian_zero_trace_sum(3, 5, 92);
    const DlmStepper stepper(ens);
    double defect = unitarity_defect(ens);
    for (int n = 1; n <= kSteps; ++n) {
      ens = stepper.step(ens);
      defect = std::max(defect, unitarity_defect(ens));
    }
    at_most(r, fmt::format("{} unitarity defect over 1e4 steps", to_string(s)),
            defect, 1e-10 * 3);
  }
  SphereEnsemble sph;
  sph.kappa = 1.0;
  sph.h = 0.1;
  for (int i = 0; i < 10; ++i) {
    sph.points.push_back(random_unit_vector(3, derive_seed(93, 1, static_cast<std::uint64_t>(i))));
  }
  sph.omegas = random_zero_sum_skew(3, 10, 94, 1.0);
  double defect = sphere_norm_defect(sph);
  for (int n = 1; n <= kSteps; ++n) {
    sph = sphere_step(sph);
    defect = std::max(defect, sphere_norm_defect(sph));
  }
  at_most(r, "sphere norm defect over 1e4 steps", defect, 1e-12);
}

// --- exponential oracle ----------------------------------------------------

void suite_expm(SuiteReport &r, const SuiteOptions &) {
  double gap = 0.0;
  double defect = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int d = 1 + t % 8;
    const ComplexMatrix s =
        Complex(0.0, 1.0) * random_hermitian(d, derive_seed(101, 1, static_cast<std::uint64_t>(t)));
    const ComplexMatrix u = expm_skew_hermitian(s);
    gap = std::max(gap, (u - expm_taylor_oracle(s, 30, 8)).norm());
    defect = std::max(defect, is_unitary(u, 0.0).defect / d);
  }
  at_most(r, "eigen route vs Taylor oracle, 1e3 inputs, d <= 8", gap, 1e-12);
  at_most(r, "unitarity defect / d", defect, 1e-12);
}

using SuiteFn = std::function<void(SuiteReport &, const SuiteOptions &)>;

const std::map<std::string, SuiteFn, std::less<>> &registry() {
  static const std::map<std::string, SuiteFn, std::less<>> table{
      {"T3.1", suite_t31},
      {"T5.1", suite_t51},
      {"T6.1",
       [](SuiteReport &r, const SuiteOptions &o) {
         suite_pair(r, o, Scheme::LieTrotter, Theorem::T6_1);
       }},
      {"T6.2", suite_t62},
      {"T6.3",
       [](SuiteReport &r, const SuiteOptions &o) {
         suite_pair(r, o, Scheme::Strang, Theorem::T6_3);
       }},
      {"lemmas", suite_lemmas},
      {"thresholds", suite_thresholds},
      {"coincidence", suite_coincidence},
      {"kuramoto", suite_kuramoto},
      {"preservation", suite_preservation},
      {"expm", suite_expm},
  };
  return table;
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const SuiteCheck &c) { return c.passed; });
}

const SuiteCheck *SuiteReport::find(std::string_view name) const {
  for (const auto &c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const std::vector<std::string> &suite_ids() {
  static const std::vector<std::string> ids{
      "T3.1",       "T5.1",        "T6.1",     "T6.2",
      "T6.3",       "lemmas",      "thresholds", "coincidence",
      "kuramoto",   "preservation", "expm"};
  return ids;
}

SuiteReport run_theorem_suite(std::string_view id, const SuiteOptions &opts) {
  const auto &table = registry();
  const auto it = table.find(id);
  if (it == table.end()) {
    throw std::invalid_argument(fmt::format("unknown suite '{}'", id));
  }
  SuiteReport report;
  report.id = std::string(id);
  const auto t0 = std::chrono::steady_clock::now();
  it->second(report, opts);
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

std::vector<SuiteReport> run_suites(const std::vector<std::string> &ids,
                                    const SuiteOptions &opts, bool parallel) {
  for (const auto &id : ids) {
    if (registry().find(id) == registry().end()) {
      throw std::invalid_argument(fmt::format("unknown suite '{}'", id));
    }
  }
  std::vector<SuiteReport> out;
  if (!parallel) {
    for (const auto &id : ids) out.push_back(run_theorem_suite(id, opts));
    return out;
  }
  std::vector<std::future<SuiteReport>> jobs;
  for (const auto &id : ids) {
    jobs.push_back(std::async(std::launch::async,
                              [id, opts] { return run_theorem_suite(id, opts); }));
  }
  for (auto &job : jobs) out.push_back(job.get());
  return out;
}

json to_json(const SuiteReport &r) {
  json checks = json::array();
  for (const auto &c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"value", c.value},
                      {"bound", c.bound},
                      {"detail", c.detail}});
  }
  json frameworks = json::array();
  for (const auto &f : r.frameworks) frameworks.push_back(to_json(f));
  return {{"suite", r.id},
          {"passed", r.passed()},
          {"skipped", r.skipped},
          {"elapsed_seconds", r.elapsed_seconds},
          {"frameworks", frameworks},
          {"checks", checks},
          {"notes", r.notes}};
}

}  // namespace lohe::harness
