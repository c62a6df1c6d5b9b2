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

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lohe/linalg.hpp"
#include "lohe/thresholds.hpp"

namespace lohe::harness {

/// Decimal with 17 significant digits.
std::string format_real(double x);

/// Diagnostics table: header row, one row per step, '\n' endings.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path &path,
            const std::vector<std::string> &header);

  void row(long long n, const std::vector<double> &values,
           std::optional<long long> wall_clock_ns = std::nullopt);
  /// "# <text>" line marking an incomplete run.
  void trailer(const std::string &text);

 private:
  std::ofstream out_;
  std::size_t columns_;
};

nlohmann::json to_json(const ComplexMatrix &m);
nlohmann::json to_json(const RealMatrix &m);
nlohmann::json to_json(const RealVector &v);
nlohmann::json to_json(const FrameworkReport &r);

/// Nested [re, im] pairs; throws std::invalid_argument naming the field.
ComplexMatrix complex_matrix_from_json(const nlohmann::json &j,
                                       const std::string &field);
RealMatrix real_matrix_from_json(const nlohmann::json &j,
                                 const std::string &field);
RealVector real_vector_from_json(const nlohmann::json &j,
                                 const std::string &field);

void write_json(const std::filesystem::path &path, const nlohmann::json &doc);
nlohmann::json read_json(const std::filesystem::path &path);

}  // namespace lohe::harness
