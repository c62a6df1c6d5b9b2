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
#include <stdexcept>
#include <string>

namespace lohe {

/// Input matrix lacks the required structure (skew-Hermitian, Hermitian,
/// unitary). Carries the measured defect.
class StructureError : public std::domain_error {
 public:
  StructureError(const std::string &what, double defect)
      : std::domain_error(what), defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

/// The Hermitian eigensolver did not converge.
class EigenSolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Polar projection refused a (numerically) singular matrix.
class SingularMatrixError : public std::domain_error {
 public:
  SingularMatrixError(const std::string &what, double smallest_singular_value)
      : std::domain_error(what), sigma_min_(smallest_singular_value) {}
  double smallest_singular_value() const noexcept { return sigma_min_; }

 private:
  double sigma_min_;
};

/// A discrete step produced an unusable state for one agent.
class StepRejected : public std::runtime_error {
 public:
  StepRejected(const std::string &what, std::size_t agent)
      : std::runtime_error(what), agent_(agent) {}
  std::size_t agent() const noexcept { return agent_; }

 private:
  std::size_t agent_;
};

/// Parameters outside the admissible region of a threshold computation.
class HypothesisError : public std::domain_error {
 public:
  HypothesisError(const std::string &what, double margin)
      : std::domain_error(what), margin_(margin) {}
  double margin() const noexcept { return margin_; }

 private:
  double margin_;
};

}  // namespace lohe
