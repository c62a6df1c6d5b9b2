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

#include "lohe/thresholds.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "lohe/errors.hpp"

namespace lohe {

namespace {

constexpr double kSeriesCutoff = 1e-4;
constexpr double kBetaTol = 1e-10;
constexpr double kAlphaTol = 1e-12;

// (e^{c beta} - 1) / (2 beta)
double expm1_ratio(double c, double beta) {
  if (beta < kSeriesCutoff) {
    // (c/2) sum_k (c beta)^k / (k+1)!
    const double x = c * beta;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 8; ++k) {
      term *= x / static_cast<double>(k + 1);
      sum += term;
    }
    return 0.5 * c * sum;
  }
  return std::expm1(c * beta) / (2.0 * beta);
}

void require_beta(double beta, const char *op) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument(
        fmt::format("{}: beta must be finite and >= 0, got {}", op, beta));
  }
}

// Root of a function that changes sign on [lo, hi].
double bisect(const std::function<double(double)> &f, double lo, double hi,
              double tol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw std::logic_error("bisect: root not bracketed");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Strict inequality rows report a negative slack on equality.
double strict(double slack) {
  return slack > 0.0 ? slack
                     : slack - std::numeric_limits<double>::denorm_min();
}

}  // namespace

double lambda_of(double beta) {
  require_beta(beta, "lambda_of");
  if (beta == 0.0) return 2.0;
  return 4.0 - std::exp(2.0 * beta) - expm1_ratio(2.0, beta);
}

double m_of(double beta) {
  require_beta(beta, "m_of");
  if (beta == 0.0) return 1.0 / 3.0;
  return (6.0 - 2.0 * std::exp(2.0 * beta) - expm1_ratio(4.0, beta)) / 6.0;
}

double find_beta0() {
  static const double root = bisect(lambda_of, 0.0, 1.0, kBetaTol);
  return root;
}

double find_beta1() {
  static const double root = bisect(m_of, 0.0, 1.0, kBetaTol);
  return root;
}

CubicRoots cubic_alphas(double beta, double dh_over_kappa) {
  const double beta0 = find_beta0();
  if (!(beta > 0.0) || !(beta < beta0)) {
    throw HypothesisError(
        fmt::format("cubic_alphas: beta = {} outside (0, {:.6f})", beta, beta0),
        std::min(beta, beta0 - beta));
  }
  if (!(dh_over_kappa >= 0.0)) {
    throw std::invalid_argument("cubic_alphas: D(H)/kappa must be >= 0");
  }
  const double lam = lambda_of(beta);
  const double bound = std::pow(lam / 3.0, 1.5);
  if (!(dh_over_kappa < bound)) {
    throw HypothesisError(
        fmt::format("cubic_alphas: D(H)/kappa = {} violates the existence "
                    "bound {}",
                    dh_over_kappa, bound),
        bound - dh_over_kappa);
  }
  if (dh_over_kappa == 0.0) return {0.0, std::sqrt(lam)};
  const auto g = [&](double x) { return lam * x - x * x * x - 2.0 * dh_over_kappa; };
  const double peak = std::sqrt(lam / 3.0);
  return {bisect(g, 0.0, peak, kAlphaTol),
          bisect(g, peak, std::sqrt(lam), kAlphaTol)};
}

double locking_coupling_bound(double beta) {
  const double lam = lambda_of(beta);
  const double m = m_of(beta);
  return 0.5 * (lam * m - m * m * m);
}

namespace {

double contraction(double beta, double gap) {
  const double sq = 1.0 - 6.0 * beta * gap;
  if (!(sq >= 0.0) || !(sq <= 1.0)) {
    throw HypothesisError(
        fmt::format("contraction factor squared {} outside [0, 1]", sq), sq);
  }
  return std::sqrt(sq);
}

}  // namespace

double lie_trotter_contraction(double beta, double alpha) {
  return contraction(beta, m_of(beta) - alpha);
}

double strang_contraction(double beta, double alpha, double dh_over_kappa) {
  return contraction(beta, m_of(beta) - alpha - 2.0 * dh_over_kappa);
}

double aggregation_factor_sq(double beta, double d0) {
  return 1.0 - beta * (lambda_of(beta) - d0 * d0);
}

double aggregation_rate(double beta, double d0) {
  const double sq = aggregation_factor_sq(beta, d0);
  if (!(sq >= 0.0) || !(sq <= 1.0)) {
    throw HypothesisError(
        fmt::format("aggregation factor squared {} outside [0, 1]", sq), sq);
  }
  return std::sqrt(sq);
}

std::string_view to_string(Theorem t) {
  switch (t) {
    case Theorem::T3_1:
      return "T3.1";
    case Theorem::T5_1:
      return "T5.1";
    case Theorem::P6_1:
      return "P6.1";
    case Theorem::T6_1:
      return "T6.1";
    case Theorem::T6_2:
      return "T6.2";
    case Theorem::P6_2:
      return "P6.2";
    case Theorem::T6_3:
      return "T6.3";
  }
  return "unknown";
}

Theorem parse_theorem(std::string_view id) {
  for (Theorem t : {Theorem::T3_1, Theorem::T5_1, Theorem::P6_1, Theorem::T6_1,
                    Theorem::T6_2, Theorem::P6_2, Theorem::T6_3}) {
    if (to_string(t) == id) return t;
  }
  throw std::invalid_argument(fmt::format("unknown theorem id '{}'", id));
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified:
      return "certified";
    case Verdict::Heuristic:
      return "heuristic";
    case Verdict::Empirical:
      return "empirical";
  }
  return "unknown";
}

namespace {

class Rows {
 public:
  explicit Rows(FrameworkReport &r) : r_(r) {}

  void less(const std::string &name, double actual, double bound) {
    r_.margins.push_back({name, bound, actual, strict(bound - actual)});
  }
  void at_most(const std::string &name, double actual, double bound) {
    r_.margins.push_back({name, bound, actual, bound - actual});
  }
  void greater(const std::string &name, double actual, double bound) {
    r_.margins.push_back({name, bound, actual, strict(actual - bound)});
  }
  void fail(const std::string &name, const std::string &why) {
    r_.margins.push_back({name, std::numeric_limits<double>::quiet_NaN(),
                          std::numeric_limits<double>::quiet_NaN(),
                          -std::numeric_limits<double>::infinity()});
    r_.notes.push_back(why);
  }

 private:
  FrameworkReport &r_;
};

void beta_window(Rows &rows, double beta, double upper, const char *name) {
  rows.greater("beta > 0", beta, 0.0);
  rows.less(fmt::format("beta < {}", name), beta, upper);
}

void initial_ball(Rows &rows, const ConfigSummary &cfg, double radius,
                  const std::string &label, bool closed) {
  auto add = [&](const std::string &name, double d) {
    if (closed) {
      rows.at_most(name, d, radius);
    } else {
      rows.less(name, d, radius);
    }
  };
  add(fmt::format("D(U0) {} {}", closed ? "<=" : "<", label),
      cfg.initial_diameter);
  if (cfg.initial_diameter_tilde) {
    add(fmt::format("D(~U0) {} {}", closed ? "<=" : "<", label),
        *cfg.initial_diameter_tilde);
  }
}

}  // namespace

FrameworkReport check_framework(Theorem theorem, const ConfigSummary &cfg) {
  FrameworkReport report;
  report.theorem = theorem;
  Rows rows(report);
  const double beta = cfg.beta;
  const bool beta_ok = std::isfinite(beta) && beta >= 0.0;
  const double delta = cfg.dh_over_kappa;

  switch (theorem) {
    case Theorem::T3_1:
      rows.greater("beta > 0", beta, 0.0);
      rows.at_most("beta <= 1", beta, 1.0);
      rows.greater("B(0) > 0", cfg.initial_min_pair_inner, 0.0);
      rows.at_most("max ||Omega_i|| = 0", cfg.free_flow_max_norm, 0.0);
      break;

    case Theorem::T5_1:
      beta_window(rows, beta, find_beta0(), "beta0");
      rows.at_most("max ||H_i|| = 0", cfg.free_flow_max_norm, 0.0);
      if (beta_ok) {
        rows.less("D(0)^2 < Lambda(beta)",
                  cfg.initial_diameter * cfg.initial_diameter,
                  lambda_of(beta));
      }
      break;

    case Theorem::P6_1:
    case Theorem::T6_2: {
      const bool locking = theorem == Theorem::T6_2;
      beta_window(rows, beta, locking ? find_beta1() : find_beta0(),
                  locking ? "beta1" : "beta0");
      if (!beta_ok) break;
      const double existence = std::pow(lambda_of(beta) / 3.0, 1.5);
      if (locking) {
        rows.less("D(H)/kappa < (Lambda M - M^3)/2", delta,
                  locking_coupling_bound(beta));
      } else {
        rows.less("D(H)/kappa < (Lambda/3)^(3/2)", delta, existence);
      }
      if (beta > 0.0 && beta < find_beta0() && delta >= 0.0 &&
          delta < existence) {
        const auto roots = cubic_alphas(beta, delta);
        initial_ball(rows, cfg, roots.alpha2, "alpha2", false);
      } else {
        rows.fail("D(U0) < alpha2", "alpha2 undefined: cubic has no admissible roots");
      }
      break;
    }

    case Theorem::T6_1:
    case Theorem::T6_3: {
      const bool strang = theorem == Theorem::T6_3;
      beta_window(rows, beta, find_beta1(), "beta1");
      if (strang) {
        report.verdict = Verdict::Heuristic;
        rows.at_most("||sum H_k||_F <= 1e-12", cfg.h_sum_defect, 1e-12);
        if (beta_ok) {
          rows.at_most(
              fmt::format("D(H)/kappa <= {} beta^(1+{})", cfg.implied_constant,
                          cfg.epsilon),
              delta,
              cfg.implied_constant * std::pow(beta, 1.0 + cfg.epsilon));
        }
        report.notes.push_back(
            "small-beta and D(H)/kappa <~ beta^(1+eps) rows use caller "
            "supplied constants");
      }
      if (!cfg.alpha) {
        rows.fail("alpha supplied", "ball radius alpha was not supplied");
        break;
      }
      const double alpha = *cfg.alpha;
      rows.greater("alpha > 0", alpha, 0.0);
      if (beta_ok) {
        if (strang) {
          rows.less("alpha < M(beta) - 2 D(H)/kappa", alpha,
                    m_of(beta) - 2.0 * delta);
        } else {
          rows.less("alpha < M(beta)", alpha, m_of(beta));
        }
      }
      initial_ball(rows, cfg, alpha, "alpha", true);
      report.notes.push_back(
          "ball membership for all n is checked online during the run");
      break;
    }

    case Theorem::P6_2: {
      report.verdict = Verdict::Empirical;
      rows.greater("beta > 0", beta, 0.0);
      rows.at_most("||sum H_k||_F <= 1e-12", cfg.h_sum_defect, 1e-12);
      if (beta_ok) {
        rows.at_most(
            fmt::format("D(H)/kappa <= {} beta^(1+{})", cfg.implied_constant,
                        cfg.epsilon),
            delta, cfg.implied_constant * std::pow(beta, 1.0 + cfg.epsilon));
        rows.less(fmt::format("D(V0) < beta^({}/2)", cfg.epsilon),
                  cfg.initial_diameter, std::pow(beta, 0.5 * cfg.epsilon));
      }
      report.notes.push_back(
          "beta* has no closed form; invariance of the ball is only "
          "observed empirically");
      break;
    }
  }

  report.satisfied =
      std::all_of(report.margins.begin(), report.margins.end(),
                  [](const Margin &m) { return m.slack >= 0.0; });
  return report;
}

FrameworkReport check_framework(std::string_view theorem_id,
                                const ConfigSummary &cfg) {
  return check_framework(parse_theorem(theorem_id), cfg);
}

}  // namespace lohe
