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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "lohe/errors.hpp"

namespace lohe {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Carries unitary states, Hamiltonians and
/// coupling terms alike.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Tolerances for the structure predicates. Both must stay below 1e-3.
struct StructureTolerance {
  double eps_structure = 1e-10;
  double eps_eigen = 1e-12;
};

/// Throws std::invalid_argument unless 0 <= eps < 1e-3 for both fields.
void validate(const StructureTolerance &tol);

ComplexMatrix identity(int d);

double frobenius_norm(const ComplexMatrix &a);

/// Largest singular value, sqrt(lambda_max(A^dagger A)).
double operator_norm(const ComplexMatrix &a);

/// ||A + A^dagger||_F
double skew_hermitian_defect(const ComplexMatrix &a);
/// ||A - A^dagger||_F
double hermitian_defect(const ComplexMatrix &a);

/// exp(S) for skew-Hermitian S, via the eigendecomposition of the Hermitian
/// matrix iS. The result is unitary to eigensolver precision.
///
/// Throws StructureError when ||S + S^dagger||_F exceeds
/// eps_structure * max(1, ||S||_F), EigenSolverError on non-convergence.
ComplexMatrix expm_skew_hermitian(const ComplexMatrix &s,
                                  const StructureTolerance &tol = {});

/// (sum_{k=0}^{terms} (S/2^squarings)^k / k!)^(2^squarings). Independent
/// reference for expm_skew_hermitian; accepts any square matrix.
ComplexMatrix expm_taylor_oracle(const ComplexMatrix &s, int terms,
                                 int squarings);

/// Unitary polar factor Q of A = QP, the nearest unitary matrix in Frobenius
/// norm. Throws SingularMatrixError when sigma_min(A) <= eps_eigen.
ComplexMatrix project_unitary(const ComplexMatrix &a,
                              const StructureTolerance &tol = {});

struct UnitarityCheck {
  bool unitary;
  double defect;  // ||U^dagger U - I||_F
};

UnitarityCheck is_unitary(const ComplexMatrix &u, double tol);

// Seeded generators. Outputs are deterministic functions of (dims, seed).

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// diagonal of R phase-normalized.
ComplexMatrix random_unitary(int d, std::uint64_t seed);

/// Hermitian matrix with i.i.d. complex Gaussian entries (GUE-like).
ComplexMatrix random_hermitian(int d, std::uint64_t seed);

/// N Hermitian matrices whose sum is the zero matrix (ensemble mean removed).
std::vector<ComplexMatrix> random_hermitian_zero_trace_sum(
    int d, int n, std::uint64_t seed, double scale = 1.0);

/// Gaussian vector normalized to unit 2-norm.
RealVector random_unit_vector(int d, std::uint64_t seed);

}  // namespace lohe
