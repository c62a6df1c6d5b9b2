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

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lohe {

/// Lambda(beta) = 4 - e^{2 beta} - (e^{2 beta} - 1) / (2 beta), Lambda(0) = 2.
double lambda_of(double beta);

/// M(beta) = (6 - 2 e^{2 beta} - (e^{4 beta} - 1) / (2 beta)) / 6, extended
/// continuously to M(0) = 1/3.
double m_of(double beta);

/// Positive roots of Lambda and M, bisected on [0, 1] to 1e-10.
double find_beta0();
double find_beta1();

/// Roots of Lambda(beta) x - x^3 = 2 delta with delta = D(H)/kappa,
/// 0 <= alpha1 < sqrt(Lambda/3) < alpha2 <= sqrt(Lambda).
struct CubicRoots {
  double alpha1;
  double alpha2;
};

/// Throws HypothesisError unless 0 < beta < beta0 and
/// 0 <= delta < (Lambda/3)^{3/2}.
CubicRoots cubic_alphas(double beta, double dh_over_kappa);

/// Largest D(H)/kappa admitted by the state-locking framework,
/// (Lambda M - M^3) / 2.
double locking_coupling_bound(double beta);

/// Per-step contraction factors of the relative-position metric.
/// Lie-Trotter: sqrt(1 - 6 beta (M - alpha)).
/// Strang:      sqrt(1 - 6 beta (M - alpha - 2 delta)).
double lie_trotter_contraction(double beta, double alpha);
double strang_contraction(double beta, double alpha, double dh_over_kappa);

/// Homogeneous aggregation: squared per-step factor 1 - beta (Lambda - D0^2)
/// and the rate 1 - C = sqrt of it.
double aggregation_factor_sq(double beta, double d0);
double aggregation_rate(double beta, double d0);

enum class Theorem { T3_1, T5_1, P6_1, T6_1, T6_2, P6_2, T6_3 };

std::string_view to_string(Theorem t);
/// Accepts "T3.1", "T5.1", "P6.1", "T6.1", "T6.2", "P6.2", "T6.3".
Theorem parse_theorem(std::string_view id);

struct ConfigSummary {
  double beta = 0.0;
  double initial_diameter = 0.0;
  std::optional<double> initial_diameter_tilde;
  double dh_over_kappa = 0.0;
  /// Smallest initial pairwise inner product (sphere runs).
  double initial_min_pair_inner = 0.0;
  /// ||sum_k H_k||_F
  double h_sum_defect = 0.0;
  /// Largest ||Omega_i|| or ||H_i||, zero for homogeneous runs.
  double free_flow_max_norm = 0.0;
  /// Ball radius for the orbital-stability theorems.
  std::optional<double> alpha;
  /// Exponent and implied constant in D(H)/kappa <= C beta^{1+epsilon}.
  double epsilon = 0.5;
  double implied_constant = 1.0;
};

struct Margin {
  std::string condition;
  double required;
  double actual;
  double slack;
};

enum class Verdict { Certified, Heuristic, Empirical };

std::string_view to_string(Verdict v);

struct FrameworkReport {
  Theorem theorem;
  bool satisfied = false;
  std::vector<Margin> margins;
  Verdict verdict = Verdict::Certified;
  std::vector<std::string> notes;
};

FrameworkReport check_framework(Theorem theorem, const ConfigSummary &cfg);
/// Throws std::invalid_argument for unknown ids.
FrameworkReport check_framework(std::string_view theorem_id,
                                const ConfigSummary &cfg);

}  // namespace lohe
