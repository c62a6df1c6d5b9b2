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

#include "lohe/unitary.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lohe/sphere.hpp"

namespace lohe {

namespace {

const Complex kMinusI(0.0, -1.0);

void require_same_shape(const UnitaryEnsemble &a, const UnitaryEnsemble &b,
                        const char *op) {
  if (a.size() != b.size() || a.dim() != b.dim()) {
    throw std::invalid_argument(fmt::format(
        "{}: shape mismatch (N={}, d={} vs N={}, d={})", op, a.size(), a.dim(),
        b.size(), b.dim()));
  }
}

double max_increment(const std::vector<std::vector<ComplexMatrix>> &prev,
                     const std::vector<std::vector<ComplexMatrix>> &cur) {
  double worst = 0.0;
  for (std::size_t i = 0; i < cur.size(); ++i) {
    for (std::size_t j = 0; j < cur.size(); ++j) {
      worst = std::max(worst, (cur[i][j] - prev[i][j]).norm());
    }
  }
  return worst;
}

}  // namespace

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::LieGroup:
      return "dlm-a";
    case Scheme::LieTrotter:
      return "dlm-b";
    case Scheme::Strang:
      return "dlm-c";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "A" || name == "dlm-a") return Scheme::LieGroup;
  if (name == "B" || name == "dlm-b") return Scheme::LieTrotter;
  if (name == "C" || name == "dlm-c") return Scheme::Strang;
  throw std::invalid_argument(fmt::format("unknown scheme '{}'", name));
}

void validate(const UnitaryEnsemble &ens) {
  if (ens.matrices.empty()) {
    throw std::invalid_argument("UnitaryEnsemble: no agents");
  }
  if (ens.hamiltonians.size() != ens.matrices.size()) {
    throw std::invalid_argument(fmt::format(
        "UnitaryEnsemble: {} states but {} Hamiltonians", ens.matrices.size(),
        ens.hamiltonians.size()));
  }
  if (!(ens.kappa >= 0.0) || !std::isfinite(ens.kappa)) {
    throw std::invalid_argument("UnitaryEnsemble: kappa must be finite and >= 0");
  }
  if (!(ens.h > 0.0) || !std::isfinite(ens.h)) {
    throw std::invalid_argument("UnitaryEnsemble: h must be finite and > 0");
  }
  const int d = ens.dim();
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const auto &u = ens.matrices[i];
    const auto &hm = ens.hamiltonians[i];
    if (u.rows() != d || u.cols() != d || hm.rows() != d || hm.cols() != d) {
      throw std::invalid_argument(
          fmt::format("UnitaryEnsemble: agent {} is not {}x{}", i, d, d));
    }
    if (!u.allFinite() || !hm.allFinite()) {
      throw std::invalid_argument(
          fmt::format("UnitaryEnsemble: agent {} has non-finite entries", i));
    }
    const auto check = is_unitary(u, 1e-10 * d);
    if (!check.unitary) {
      throw StructureError(fmt::format("UnitaryEnsemble: state {} is not "
                                       "unitary (defect {:.3e})",
                                       i, check.defect),
                           check.defect);
    }
    const double herm = hermitian_defect(hm);
    if (herm > 1e-12) {
      throw StructureError(fmt::format("UnitaryEnsemble: Hamiltonian {} is not "
                                       "Hermitian (defect {:.3e})",
                                       i, herm),
                           herm);
    }
  }
}

std::vector<ComplexMatrix> zero_hamiltonians(int d, std::size_t n) {
  return std::vector<ComplexMatrix>(n, ComplexMatrix::Zero(d, d));
}

ComplexMatrix matrix_centroid(const UnitaryEnsemble &ens) {
  const int d = ens.dim();
  ComplexMatrix c = ComplexMatrix::Zero(d, d);
  for (const auto &u : ens.matrices) c += u;
  return c / static_cast<double>(ens.size());
}

namespace {

ComplexMatrix delta_from(const ComplexMatrix &uc, const ComplexMatrix &ui) {
  return 0.5 * (uc * ui.adjoint() - ui * uc.adjoint());
}

}  // namespace

ComplexMatrix coupling_delta(const UnitaryEnsemble &ens, std::size_t i) {
  if (i >= ens.size()) throw std::out_of_range("coupling_delta: agent index");
  return delta_from(matrix_centroid(ens), ens.matrices[i]);
}

std::vector<ComplexMatrix> coupling_deltas(const UnitaryEnsemble &ens) {
  const ComplexMatrix uc = matrix_centroid(ens);
  std::vector<ComplexMatrix> out;
  out.reserve(ens.size());
  for (const auto &u : ens.matrices) out.push_back(delta_from(uc, u));
  return out;
}

DlmStepper::DlmStepper(const UnitaryEnsemble &prototype,
                       const StructureTolerance &tol)
    : h_(prototype.h), scheme_(prototype.scheme), tol_(tol) {
  validate(tol);
  generators_.reserve(prototype.size());
  free_.reserve(prototype.size());
  for (const auto &hm : prototype.hamiltonians) {
    generators_.push_back(kMinusI * h_ * hm);
    switch (scheme_) {
      case Scheme::LieGroup:
        break;
      case Scheme::LieTrotter:
        free_.push_back(expm_skew_hermitian(generators_.back(), tol_));
        break;
      case Scheme::Strang:
        free_.push_back(expm_skew_hermitian(0.5 * generators_.back(), tol_));
        break;
    }
  }
}

UnitaryEnsemble DlmStepper::step(const UnitaryEnsemble &ens) const {
  if (ens.size() != generators_.size()) {
    throw std::invalid_argument(fmt::format(
        "DlmStepper: built for {} agents, got {}", generators_.size(),
        ens.size()));
  }
  const double beta = ens.kappa * h_;
  const auto deltas = coupling_deltas(ens);
  UnitaryEnsemble next = ens;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const ComplexMatrix &u = ens.matrices[i];
    switch (scheme_) {
      case Scheme::LieGroup:
        next.matrices[i] =
            expm_skew_hermitian(generators_[i] + beta * deltas[i], tol_) * u;
        break;
      case Scheme::LieTrotter:
        next.matrices[i] =
            free_[i] * (expm_skew_hermitian(beta * deltas[i], tol_) * u);
        break;
      case Scheme::Strang:
        next.matrices[i] =
            free_[i] *
            (expm_skew_hermitian(beta * deltas[i], tol_) * (free_[i] * u));
        break;
    }
  }
  return next;
}

UnitaryEnsemble dlm_step(const UnitaryEnsemble &ens) {
  return DlmStepper(ens).step(ens);
}

double matrix_diameter(const std::vector<ComplexMatrix> &ms) {
  double worst = 0.0;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      worst = std::max(worst, (ms[i] - ms[j]).norm());
    }
  }
  return worst;
}

double matrix_diameter(const UnitaryEnsemble &ens) {
  return matrix_diameter(ens.matrices);
}

double hamiltonian_diameter(const UnitaryEnsemble &ens) {
  return matrix_diameter(ens.hamiltonians);
}

double unitarity_defect(const UnitaryEnsemble &ens) {
  double worst = 0.0;
  for (const auto &u : ens.matrices) {
    worst = std::max(worst, is_unitary(u, 0.0).defect);
  }
  return worst;
}

double hamiltonian_sum_defect(const UnitaryEnsemble &ens) {
  const int d = ens.dim();
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (const auto &hm : ens.hamiltonians) s += hm;
  return s.norm();
}

double relative_position_distance(const UnitaryEnsemble &a,
                                  const UnitaryEnsemble &b) {
  require_same_shape(a, b, "relative_position_distance");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const ComplexMatrix ra = a.matrices[i] * a.matrices[j].adjoint();
      const ComplexMatrix rb = b.matrices[i] * b.matrices[j].adjoint();
      worst = std::max(worst, (ra - rb).norm());
    }
  }
  return worst;
}

MatrixDiagnostics matrix_diagnostics(const UnitaryEnsemble &ens, long long n) {
  MatrixDiagnostics out;
  out.n = n;
  out.diameter_u = matrix_diameter(ens);
  out.diameter_h = hamiltonian_diameter(ens);
  out.unitarity_defect = unitarity_defect(ens);
  out.beta = ens.beta();
  return out;
}

UnitaryEnsemble right_translate(const UnitaryEnsemble &ens,
                                const ComplexMatrix &l) {
  UnitaryEnsemble out = ens;
  for (auto &u : out.matrices) u = (u * l).eval();
  return out;
}

double dlm_a_kuramoto_reduction(const std::vector<double> &thetas,
                                const std::vector<double> &nus, double kappa,
                                double h) {
  if (thetas.size() != nus.size() || thetas.empty()) {
    throw std::invalid_argument(
        "dlm_a_kuramoto_reduction: need matching, non-empty inputs");
  }
  UnitaryEnsemble ens;
  ens.kappa = kappa;
  ens.h = h;
  ens.scheme = Scheme::LieGroup;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    ComplexMatrix u(1, 1);
    u(0, 0) = std::polar(1.0, -thetas[i]);
    ComplexMatrix hm(1, 1);
    hm(0, 0) = Complex(nus[i], 0.0);
    ens.matrices.push_back(u);
    ens.hamiltonians.push_back(hm);
  }
  const auto next = dlm_step(ens);
  const auto reference =
      kuramoto_step(thetas, nus, kappa, h, KuramotoUpdate::Linear);
  double worst = 0.0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double theta = -std::arg(next.matrices[i](0, 0));
    worst = std::max(worst, angular_distance(theta, reference[i]));
  }
  return worst;
}

std::vector<ComplexMatrix> strang_intermediate_state(
    const UnitaryEnsemble &ens) {
  std::vector<ComplexMatrix> out;
  out.reserve(ens.size());
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const ComplexMatrix gen = (kMinusI * (0.5 * ens.h)) * ens.hamiltonians[i];
    out.push_back(expm_skew_hermitian(gen) * ens.matrices[i]);
  }
  return out;
}

std::vector<std::vector<ComplexMatrix>> relative_positions(
    const UnitaryEnsemble &ens) {
  std::vector<std::vector<ComplexMatrix>> out(ens.size());
  for (std::size_t i = 0; i < ens.size(); ++i) {
    out[i].reserve(ens.size());
    for (std::size_t j = 0; j < ens.size(); ++j) {
      out[i].push_back(ens.matrices[i] * ens.matrices[j].adjoint());
    }
  }
  return out;
}

LockingReport state_locking_detector(const std::vector<UnitaryEnsemble> &history,
                                     std::size_t window, double tol) {
  if (window < 2 || history.size() < window) {
    throw std::invalid_argument(fmt::format(
        "state_locking_detector: need history ({}) >= window ({}) >= 2",
        history.size(), window));
  }
  LockingMonitor monitor(window, tol);
  for (std::size_t k = history.size() - window; k < history.size(); ++k) {
    monitor.push(history[k]);
  }
  return monitor.report();
}

LockingMonitor::LockingMonitor(std::size_t window, double tol)
    : window_(window), tol_(tol) {
  if (window < 2) {
    throw std::invalid_argument("LockingMonitor: window must be >= 2");
  }
}

void LockingMonitor::push(const UnitaryEnsemble &ens) {
  auto cur = relative_positions(ens);
  if (pushed_ > 0) {
    increments_.push_back(max_increment(last_, cur));
    if (increments_.size() > window_ - 1) increments_.pop_front();
  }
  last_ = std::move(cur);
  ++pushed_;
}

double LockingMonitor::last_increment() const {
  return increments_.empty() ? 0.0 : increments_.back();
}

LockingReport LockingMonitor::report() const {
  LockingReport out;
  for (double inc : increments_) out.trailing_increment += inc;
  out.locked = pushed_ >= window_ && out.trailing_increment < tol_;
  out.limits = last_;
  return out;
}

}  // namespace lohe
