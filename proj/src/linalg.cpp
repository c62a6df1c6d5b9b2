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

#include "lohe/linalg.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace lohe {

namespace {

using DenseComplex = Eigen::MatrixXcd;

void require_square(const ComplexMatrix &a, const char *op) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw std::invalid_argument(fmt::format(
        "{}: expected a non-empty square matrix, got {}x{}", op, a.rows(),
        a.cols()));
  }
}

ComplexMatrix gaussian_matrix(int d, std::mt19937_64 &gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(d, d);
  // Fill in row-major order so that the draw sequence is layout-independent.
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double re = normal(gen);
      const double im = normal(gen);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

void validate(const StructureTolerance &tol) {
  auto ok = [](double v) { return std::isfinite(v) && v >= 0.0 && v < 1e-3; };
  if (!ok(tol.eps_structure) || !ok(tol.eps_eigen)) {
    throw std::invalid_argument(
        "StructureTolerance: both tolerances must lie in [0, 1e-3)");
  }
}

ComplexMatrix identity(int d) { return ComplexMatrix::Identity(d, d); }

double frobenius_norm(const ComplexMatrix &a) { return a.norm(); }

double operator_norm(const ComplexMatrix &a) {
  require_square(a, "operator_norm");
  const DenseComplex gram = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<DenseComplex> es(gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw EigenSolverError("operator_norm: eigensolver did not converge");
  }
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double skew_hermitian_defect(const ComplexMatrix &a) {
  return (a + a.adjoint()).norm();
}

double hermitian_defect(const ComplexMatrix &a) {
  return (a - a.adjoint()).norm();
}

ComplexMatrix expm_skew_hermitian(const ComplexMatrix &s,
                                  const StructureTolerance &tol) {
  require_square(s, "expm_skew_hermitian");
  const double norm = s.norm();
  const double defect = skew_hermitian_defect(s);
  if (!(defect <= tol.eps_structure * std::max(1.0, norm))) {
    throw StructureError(
        fmt::format("expm_skew_hermitian: input is not skew-Hermitian "
                    "(||S + S^dagger||_F = {:.3e}, ||S||_F = {:.3e})",
                    defect, norm),
        defect);
  }
  const auto d = static_cast<int>(s.rows());
  if (norm == 0.0) {
    return identity(d);
  }
  // iS is Hermitian; symmetrize away the admissible defect.
  const DenseComplex herm =
      (Complex(0.0, 0.5) * (s - s.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<DenseComplex> es(herm);
  if (es.info() != Eigen::Success) {
    throw EigenSolverError(
        "expm_skew_hermitian: Hermitian eigensolver did not converge");
  }
  // S = -i V diag(lambda) V^dagger  =>  exp(S) = V diag(e^{-i lambda}) V^dagger
  const DenseComplex &v = es.eigenvectors();
  Eigen::VectorXcd phases(d);
  for (int k = 0; k < d; ++k) {
    phases(k) = std::polar(1.0, -es.eigenvalues()(k));
  }
  return v * phases.asDiagonal() * v.adjoint();
}

ComplexMatrix expm_taylor_oracle(const ComplexMatrix &s, int terms,
                                 int squarings) {
  require_square(s, "expm_taylor_oracle");
  if (terms < 1 || squarings < 0) {
    throw std::invalid_argument(
        "expm_taylor_oracle: need terms >= 1 and squarings >= 0");
  }
  const auto d = static_cast<int>(s.rows());
  const ComplexMatrix scaled = s / std::ldexp(1.0, squarings);
  ComplexMatrix sum = identity(d);
  ComplexMatrix term = identity(d);
  for (int k = 1; k <= terms; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    sum += term;
  }
  for (int q = 0; q < squarings; ++q) {
    sum = (sum * sum).eval();
  }
  return sum;
}

ComplexMatrix project_unitary(const ComplexMatrix &a,
                              const StructureTolerance &tol) {
  require_square(a, "project_unitary");
  Eigen::JacobiSVD<DenseComplex> svd(DenseComplex(a),
                                     Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double sigma_min = svd.singularValues().minCoeff();
  if (!(sigma_min > tol.eps_eigen)) {
    throw SingularMatrixError(
        fmt::format("project_unitary: matrix is numerically singular "
                    "(smallest singular value {:.3e})",
                    sigma_min),
        sigma_min);
  }
  return svd.matrixU() * svd.matrixV().adjoint();
}

UnitarityCheck is_unitary(const ComplexMatrix &u, double tol) {
  require_square(u, "is_unitary");
  const double defect =
      (u.adjoint() * u - identity(static_cast<int>(u.rows()))).norm();
  return {defect <= tol, defect};
}

ComplexMatrix random_unitary(int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("random_unitary: d must be >= 1");
  std::mt19937_64 gen(seed);
  const DenseComplex g = gaussian_matrix(d, gen);
  Eigen::HouseholderQR<DenseComplex> qr(g);
  DenseComplex q = qr.householderQ();
  const DenseComplex &r = qr.matrixQR();
  for (int k = 0; k < d; ++k) {
    const double mag = std::abs(r(k, k));
    const Complex phase = mag > 0.0 ? r(k, k) / mag : Complex(1.0, 0.0);
    q.col(k) *= phase;
  }
  return q;
}

ComplexMatrix random_hermitian(int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("random_hermitian: d must be >= 1");
  std::mt19937_64 gen(seed);
  const ComplexMatrix g = gaussian_matrix(d, gen);
  return (0.5 * (g + g.adjoint())).eval();
}

std::vector<ComplexMatrix> random_hermitian_zero_trace_sum(int d, int n,
                                                           std::uint64_t seed,
                                                           double scale) {
  if (d < 1 || n < 1) {
    throw std::invalid_argument(
        "random_hermitian_zero_trace_sum: need d >= 1 and N >= 1");
  }
  std::mt19937_64 gen(seed);
  std::vector<ComplexMatrix> hs;
  hs.reserve(static_cast<std::size_t>(n));
  ComplexMatrix mean = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < n; ++k) {
    const ComplexMatrix g = gaussian_matrix(d, gen);
    hs.push_back((0.5 * (g + g.adjoint())).eval());
    mean += hs.back();
  }
  mean /= static_cast<double>(n);
  for (auto &h : hs) {
    h = (scale * (h - mean)).eval();
  }
  return hs;
}

RealVector random_unit_vector(int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("random_unit_vector: d must be >= 1");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  RealVector v(d);
  do {
    for (int k = 0; k < d; ++k) v(k) = normal(gen);
  } while (v.norm() == 0.0);
  return v / v.norm();
}

}  // namespace lohe
