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

#include "lohe/harness/io.hpp"

#include <fmt/core.h>

#include <cmath>
#include <stdexcept>

namespace lohe::harness {

using nlohmann::json;

std::string format_real(double x) { return fmt::format("{:.17g}", x); }

CsvWriter::CsvWriter(const std::filesystem::path &path,
                     const std::vector<std::string> &header)
    : out_(path, std::ios::binary | std::ios::trunc), columns_(header.size()) {
  if (!out_) {
    throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  }
  for (std::size_t k = 0; k < header.size(); ++k) {
    out_ << (k == 0 ? "" : ",") << header[k];
  }
  out_ << '\n';
}

void CsvWriter::row(long long n, const std::vector<double> &values,
                    std::optional<long long> wall_clock_ns) {
  const std::size_t width = 1 + values.size() + (wall_clock_ns ? 1 : 0);
  if (width != columns_) {
    throw std::logic_error(fmt::format("CsvWriter: row has {} cells, header {}",
                                       width, columns_));
  }
  out_ << n;
  for (double v : values) out_ << ',' << format_real(v);
  if (wall_clock_ns) out_ << ',' << *wall_clock_ns;
  out_ << '\n';
}

void CsvWriter::trailer(const std::string &text) {
  out_ << "# " << text << '\n';
  out_.flush();
}

json to_json(const ComplexMatrix &m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const RealMatrix &m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const RealVector &v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json to_json(const FrameworkReport &r) {
  json margins = json::array();
  for (const auto &m : r.margins) {
    margins.push_back({{"condition", m.condition},
                       {"required", m.required},
                       {"actual", m.actual},
                       {"slack", m.slack}});
  }
  return {{"theorem", std::string(to_string(r.theorem))},
          {"satisfied", r.satisfied},
          {"verdict", std::string(to_string(r.verdict))},
          {"margins", margins},
          {"notes", r.notes}};
}

namespace {

double number_at(const json &j, const std::string &field) {
  if (!j.is_number()) {
    throw std::invalid_argument(fmt::format("{}: expected a number", field));
  }
  const double x = j.get<double>();
  if (!std::isfinite(x)) {
    throw std::invalid_argument(fmt::format("{}: must be finite", field));
  }
  return x;
}

void require_rows(const json &j, const std::string &field) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    throw std::invalid_argument(
        fmt::format("{}: expected a non-empty array of rows", field));
  }
  for (const auto &row : j) {
    if (!row.is_array() || row.size() != j[0].size()) {
      throw std::invalid_argument(fmt::format("{}: ragged rows", field));
    }
  }
}

}  // namespace

ComplexMatrix complex_matrix_from_json(const json &j, const std::string &field) {
  require_rows(j, field);
  ComplexMatrix m(j.size(), j[0].size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    for (std::size_t c = 0; c < j[r].size(); ++c) {
      const auto &cell = j[r][c];
      const auto where = fmt::format("{}[{}][{}]", field, r, c);
      if (!cell.is_array() || cell.size() != 2) {
        throw std::invalid_argument(
            fmt::format("{}: expected an [re, im] pair", where));
      }
      m(r, c) = Complex(number_at(cell[0], where), number_at(cell[1], where));
    }
  }
  return m;
}

RealMatrix real_matrix_from_json(const json &j, const std::string &field) {
  require_rows(j, field);
  RealMatrix m(j.size(), j[0].size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    for (std::size_t c = 0; c < j[r].size(); ++c) {
      m(r, c) = number_at(j[r][c], fmt::format("{}[{}][{}]", field, r, c));
    }
  }
  return m;
}

RealVector real_vector_from_json(const json &j, const std::string &field) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument(fmt::format("{}: expected a non-empty array", field));
  }
  RealVector v(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    v(k) = number_at(j[k], fmt::format("{}[{}]", field, k));
  }
  return v;
}

void write_json(const std::filesystem::path &path, const json &doc) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  out << doc.dump(2) << '\n';
}

json read_json(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open {}", path.string()));
  return json::parse(in);
}

}  // namespace lohe::harness
