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

#include "lohe/sphere.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lohe {

void validate(const SphereEnsemble &ens) {
  if (ens.points.empty()) {
    throw std::invalid_argument("SphereEnsemble: no agents");
  }
  const int d = ens.dim();
  if (d < 2) {
    throw std::invalid_argument("SphereEnsemble: dimension must be >= 2");
  }
  if (ens.omegas.size() != ens.points.size()) {
    throw std::invalid_argument(fmt::format(
        "SphereEnsemble: {} points but {} frequency matrices",
        ens.points.size(), ens.omegas.size()));
  }
  if (!(ens.kappa >= 0.0) || !std::isfinite(ens.kappa)) {
    throw std::invalid_argument("SphereEnsemble: kappa must be finite and >= 0");
  }
  if (!(ens.h > 0.0) || !std::isfinite(ens.h)) {
    throw std::invalid_argument("SphereEnsemble: h must be finite and > 0");
  }
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const auto &x = ens.points[i];
    if (x.size() != d || !x.allFinite()) {
      throw std::invalid_argument(
          fmt::format("SphereEnsemble: point {} has wrong size or is not finite", i));
    }
    if (std::abs(x.norm() - 1.0) > 1e-12) {
      throw std::invalid_argument(fmt::format(
          "SphereEnsemble: point {} is off the sphere (norm {:.17g})", i,
          x.norm()));
    }
    const auto &w = ens.omegas[i];
    if (w.rows() != d || w.cols() != d || !w.allFinite()) {
      throw std::invalid_argument(fmt::format(
          "SphereEnsemble: frequency matrix {} has wrong shape or is not finite", i));
    }
    const double skew = (w + w.transpose()).norm();
    if (skew > 1e-12) {
      throw StructureError(
          fmt::format("SphereEnsemble: frequency matrix {} is not "
                      "skew-symmetric (defect {:.3e})",
                      i, skew),
          skew);
    }
  }
}

std::vector<RealMatrix> zero_omegas(int d, std::size_t n) {
  return std::vector<RealMatrix>(n, RealMatrix::Zero(d, d));
}

RealVector sphere_centroid(const SphereEnsemble &ens) {
  RealVector c = RealVector::Zero(ens.dim());
  for (const auto &x : ens.points) c += x;
  return c / static_cast<double>(ens.size());
}

SphereEnsemble sphere_step(const SphereEnsemble &ens) {
  const RealVector xc = sphere_centroid(ens);
  const double kh = ens.kappa * ens.h;
  SphereEnsemble next = ens;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const RealVector &x = ens.points[i];
    const RealVector pred =
        x + ens.h * (ens.omegas[i] * x) + kh * (xc - x.dot(xc) * x);
    const double norm = pred.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw StepRejected(
          fmt::format("sphere_step: predictor for agent {} has norm {}", i,
                      norm),
          i);
    }
    next.points[i] = pred / norm;
  }
  return next;
}

double sphere_inner_product_closed_form(const SphereEnsemble &ens,
                                        std::size_t i, std::size_t j) {
  if (i >= ens.size() || j >= ens.size()) {
    throw std::out_of_range("sphere_inner_product_closed_form: agent index");
  }
  for (std::size_t k = 0; k < ens.size(); ++k) {
    if (ens.omegas[k].norm() != 0.0) {
      throw std::invalid_argument(fmt::format(
          "sphere_inner_product_closed_form: frequency matrix {} is nonzero", k));
    }
  }
  if (i == j) return 1.0;
  const RealVector xc = sphere_centroid(ens);
  const double rho = xc.norm();
  const double b = ens.points[i].dot(ens.points[j]);
  if (rho == 0.0) return b;
  const double g = ens.kappa * ens.h * rho;
  const double ai = ens.points[i].dot(xc) / rho;
  const double aj = ens.points[j].dot(xc) / rho;
  const double num = b + g * (ai + aj) * (1.0 - b) +
                     g * g * (1.0 - ai * ai - aj * aj + ai * aj * b);
  const double den = std::sqrt(1.0 + g * g * (1.0 - ai * ai)) *
                     std::sqrt(1.0 + g * g * (1.0 - aj * aj));
  return num / den;
}

SphereDiagnostics sphere_diagnostics(const SphereEnsemble &ens, long long n) {
  SphereDiagnostics out;
  out.n = n;
  const RealVector xc = sphere_centroid(ens);
  out.rho = xc.norm();
  out.min_center_inner = 1.0;
  for (const auto &x : ens.points) {
    out.min_center_inner = std::min(out.min_center_inner, x.dot(xc));
  }
  out.min_pair_inner = 1.0;
  out.diameter = 0.0;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    for (std::size_t j = i + 1; j < ens.size(); ++j) {
      out.min_pair_inner =
          std::min(out.min_pair_inner, ens.points[i].dot(ens.points[j]));
      out.diameter =
          std::max(out.diameter, (ens.points[i] - ens.points[j]).norm());
    }
  }
  return out;
}

double sphere_norm_defect(const SphereEnsemble &ens) {
  double worst = 0.0;
  for (const auto &x : ens.points) {
    worst = std::max(worst, std::abs(x.norm() - 1.0));
  }
  return worst;
}

std::vector<double> kuramoto_step(const std::vector<double> &thetas,
                                  const std::vector<double> &nus,
                                  double kappa, double h,
                                  KuramotoUpdate update) {
  if (thetas.size() != nus.size() || thetas.empty()) {
    throw std::invalid_argument(
        "kuramoto_step: need matching, non-empty angle and frequency vectors");
  }
  const auto n = thetas.size();
  const double kh = kappa * h / static_cast<double>(n);
  std::vector<double> next(n);
  for (std::size_t i = 0; i < n; ++i) {
    double coupling = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      coupling += std::sin(thetas[j] - thetas[i]);
    }
    const double arg = nus[i] * h + kh * coupling;
    next[i] = thetas[i] +
              (update == KuramotoUpdate::Arctan ? std::atan(arg) : arg);
  }
  return next;
}

SphereEnsemble embed_circle(const std::vector<double> &thetas,
                            const std::vector<double> &nus, double kappa,
                            double h) {
  if (thetas.size() != nus.size()) {
    throw std::invalid_argument("embed_circle: size mismatch");
  }
  SphereEnsemble ens;
  ens.kappa = kappa;
  ens.h = h;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    RealVector x(2);
    x << std::cos(thetas[i]), std::sin(thetas[i]);
    RealMatrix w(2, 2);
    w << 0.0, -nus[i], nus[i], 0.0;
    ens.points.push_back(x);
    ens.omegas.push_back(w);
  }
  return ens;
}

std::vector<double> extract_angles(const SphereEnsemble &ens) {
  if (ens.dim() != 2) {
    throw std::invalid_argument("extract_angles: ensemble must live on S^1");
  }
  std::vector<double> out;
  out.reserve(ens.size());
  for (const auto &x : ens.points) out.push_back(std::atan2(x(1), x(0)));
  return out;
}

double angular_distance(double a, double b) {
  const double r = std::remainder(a - b, 2.0 * std::numbers::pi);
  return std::abs(r);
}

double sphere_to_kuramoto_roundtrip(const std::vector<double> &thetas,
                                    const std::vector<double> &nus,
                                    double kappa, double h) {
  const auto sphere = extract_angles(sphere_step(embed_circle(thetas, nus, kappa, h)));
  const auto kuramoto = kuramoto_step(thetas, nus, kappa, h);
  double worst = 0.0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    worst = std::max(worst, angular_distance(sphere[i], kuramoto[i]));
  }
  return worst;
}

}  // namespace lohe
