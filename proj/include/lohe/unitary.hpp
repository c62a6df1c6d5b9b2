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

#include <cstddef>
#include <deque>
#include <string>
#include <string_view>
#include <vector>

#include "lohe/linalg.hpp"

namespace lohe {

/// Factorization of the one-step propagator.
///   LieGroup:   exp(-iHh + beta Delta) U
///   LieTrotter: exp(-iHh) exp(beta Delta) U
///   Strang:     exp(-iHh/2) exp(beta Delta) exp(-iHh/2) U
enum class Scheme { LieGroup, LieTrotter, Strang };

std::string_view to_string(Scheme s);
/// Accepts "A"/"B"/"C" and "dlm-a"/"dlm-b"/"dlm-c".
Scheme parse_scheme(std::string_view name);

struct UnitaryEnsemble {
  std::vector<ComplexMatrix> matrices;
  std::vector<ComplexMatrix> hamiltonians;
  double kappa = 0.0;
  double h = 0.0;
  Scheme scheme = Scheme::LieGroup;

  std::size_t size() const { return matrices.size(); }
  int dim() const {
    return matrices.empty() ? 0 : static_cast<int>(matrices.front().rows());
  }
  double beta() const { return kappa * h; }
};

/// Throws std::invalid_argument on shape problems or bad kappa/h, and
/// StructureError when a matrix is not unitary (1e-10 d) or a Hamiltonian
/// is not Hermitian (1e-12).
void validate(const UnitaryEnsemble &ens);

std::vector<ComplexMatrix> zero_hamiltonians(int d, std::size_t n);

/// (1/N) sum_j U_j, accumulated in index order.
ComplexMatrix matrix_centroid(const UnitaryEnsemble &ens);

/// Delta_i = (U_c U_i^dagger - U_i U_c^dagger) / 2.
ComplexMatrix coupling_delta(const UnitaryEnsemble &ens, std::size_t i);
std::vector<ComplexMatrix> coupling_deltas(const UnitaryEnsemble &ens);

/// Steps ensembles that share the Hamiltonians, h and scheme of the
/// ensemble it was built from. Free-flow exponentials are computed once.
class DlmStepper {
 public:
  explicit DlmStepper(const UnitaryEnsemble &prototype,
                      const StructureTolerance &tol = {});

  UnitaryEnsemble step(const UnitaryEnsemble &ens) const;

 private:
  std::vector<ComplexMatrix> generators_;  // -i H_i h
  std::vector<ComplexMatrix> free_;        // exp(-iH_i h) or exp(-iH_i h/2)
  double h_;
  Scheme scheme_;
  StructureTolerance tol_;
};

UnitaryEnsemble dlm_step(const UnitaryEnsemble &ens);

double matrix_diameter(const std::vector<ComplexMatrix> &ms);
double matrix_diameter(const UnitaryEnsemble &ens);
double hamiltonian_diameter(const UnitaryEnsemble &ens);
/// max_i ||U_i^dagger U_i - I||_F
double unitarity_defect(const UnitaryEnsemble &ens);
/// ||sum_k H_k||_F
double hamiltonian_sum_defect(const UnitaryEnsemble &ens);

/// max_{i,j} ||U_i U_j^dagger - V_i V_j^dagger||_F. Throws
/// std::invalid_argument on shape mismatch.
double relative_position_distance(const UnitaryEnsemble &a,
                                  const UnitaryEnsemble &b);

struct MatrixDiagnostics {
  long long n = 0;
  double diameter_u = 0.0;
  double diameter_h = 0.0;
  double unitarity_defect = 0.0;
  double beta = 0.0;
};

MatrixDiagnostics matrix_diagnostics(const UnitaryEnsemble &ens,
                                     long long n = 0);

/// Right-multiplies every state by l.
UnitaryEnsemble right_translate(const UnitaryEnsemble &ens,
                                const ComplexMatrix &l);

/// One Lie-group step at d = 1 with U_i = e^{-i theta_i}, H_i = nu_i against
/// one linear Kuramoto step; returns the largest angular discrepancy.
double dlm_a_kuramoto_reduction(const std::vector<double> &thetas,
                                const std::vector<double> &nus, double kappa,
                                double h);

/// V_i = exp(-iH_i h/2) U_i.
std::vector<ComplexMatrix> strang_intermediate_state(
    const UnitaryEnsemble &ens);

/// R[i][j] = U_i U_j^dagger.
std::vector<std::vector<ComplexMatrix>> relative_positions(
    const UnitaryEnsemble &ens);

struct LockingReport {
  bool locked = false;
  /// Sum over the trailing window of the per-step maximal relative-position
  /// increment.
  double trailing_increment = 0.0;
  std::vector<std::vector<ComplexMatrix>> limits;
};

/// Needs history.size() >= window >= 2.
LockingReport state_locking_detector(const std::vector<UnitaryEnsemble> &history,
                                     std::size_t window, double tol);

/// Streaming form of state_locking_detector.
class LockingMonitor {
 public:
  LockingMonitor(std::size_t window, double tol);

  void push(const UnitaryEnsemble &ens);
  /// Most recent per-step increment, zero before the second push.
  double last_increment() const;
  LockingReport report() const;

 private:
  std::size_t window_;
  double tol_;
  std::size_t pushed_ = 0;
  std::deque<double> increments_;
  std::vector<std::vector<ComplexMatrix>> last_;
};

}  // namespace lohe
