// Copyright 2026 the cpdilate authors
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

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cpdilate/channel.hpp"
#include "cpdilate/complex_matrix.hpp"
#include "cpdilate/dilation.hpp"
#include "cpdilate/errors.hpp"
#include "cpdilate/verify.hpp"

namespace cpdilate::io {

using nlohmann::json;

// Channel files carry either a Kraus list or a Choi matrix. Complex scalars
// are 2-element [re, im] arrays of binary64, matrices nested row-major.
// Index conventions are spelled out as metadata strings so a foreign reader
// cannot misinterpret the flattening silently. The convention tag records
// the Kraus sum side: "heisenberg" means phi(S) = sum V_alpha* S V_alpha.

inline constexpr const char* kChannelFormat = "cpdilate-channel";
inline constexpr const char* kDilationFormat = "cpdilate-dilation";
inline constexpr const char* kConvention = "heisenberg";
inline constexpr const char* kChoiIndexConvention = "row = i*d + k";
inline constexpr const char* kWIndexConvention = "row = i*r + alpha";

inline json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw Error("matrix: expected an array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  std::vector<Complex> data;
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array()) throw Error("matrix: expected an array of rows");
    if (i == 0) {
      cols = row.size();
      data.reserve(rows * cols);
    } else if (row.size() != cols) {
      throw Error("matrix: ragged rows");
    }
    for (const json& entry : row) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number())
        throw Error("matrix: entries must be [re, im] number pairs");
      data.emplace_back(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  if (rows == 0) return ComplexMatrix();
  return ComplexMatrix(rows, cols, std::move(data));
}

struct ChannelData {
  std::size_t dim = 0;
  std::string representation;  // "kraus" | "choi"
  bool zero_map = false;
  std::vector<ComplexMatrix> kraus;
  ComplexMatrix choi;
};

namespace detail {

inline json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error("malformed JSON in " + path + ": " + e.what());
  }
}

inline void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw Error("write failed: " + path);
}

inline void require_tag(const json& j, const char* key, const char* expect) {
  if (!j.contains(key) || !j[key].is_string() ||
      j[key].get<std::string>() != expect)
    throw Error(std::string("field '") + key + "' must be \"" + expect +
                "\"");
}

}  // namespace detail

inline ChannelData load_channel(const std::string& path) {
  const json j = detail::parse_file(path);
  detail::require_tag(j, "format", kChannelFormat);
  detail::require_tag(j, "convention", kConvention);
  if (!j.contains("dim") || !j["dim"].is_number_unsigned() ||
      j["dim"].get<std::size_t>() < 1)
    throw Error("field 'dim' must be a positive integer");
  if (!j.contains("representation") || !j["representation"].is_string())
    throw Error("field 'representation' must be \"kraus\" or \"choi\"");
  if (!j.contains("data")) throw Error("field 'data' missing");

  ChannelData ch;
  ch.dim = j["dim"].get<std::size_t>();
  ch.representation = j["representation"].get<std::string>();
  ch.zero_map = j.value("zero_map", false);

  if (ch.representation == "kraus") {
    if (!j["data"].is_array()) throw Error("kraus data must be an array");
    for (const json& mat : j["data"]) {
      ComplexMatrix v = matrix_from_json(mat);
      if (v.rows() != ch.dim || v.cols() != ch.dim)
        throw Error("kraus operator is not dim x dim");
      ch.kraus.push_back(std::move(v));
    }
    if (ch.kraus.empty() && !ch.zero_map)
      throw Error("empty kraus list requires \"zero_map\": true");
    if (!ch.kraus.empty() && ch.zero_map)
      throw Error("\"zero_map\": true requires an empty kraus list");
  } else if (ch.representation == "choi") {
    detail::require_tag(j, "choi_index_convention", kChoiIndexConvention);
    ch.choi = matrix_from_json(j["data"]);
    if (ch.choi.rows() != ch.dim * ch.dim || ch.choi.cols() != ch.dim * ch.dim)
      throw Error("choi matrix is not dim^2 x dim^2");
  } else {
    throw Error("field 'representation' must be \"kraus\" or \"choi\"");
  }
  return ch;
}

inline void save_channel_kraus(const std::string& path, std::size_t dim,
                               const std::vector<ComplexMatrix>& ops) {
  json j;
  j["format"] = kChannelFormat;
  j["convention"] = kConvention;
  j["dim"] = dim;
  j["representation"] = "kraus";
  if (ops.empty()) j["zero_map"] = true;
  json data = json::array();
  for (const auto& v : ops) data.push_back(matrix_to_json(v));
  j["data"] = std::move(data);
  detail::write_file(path, j);
}

inline void save_channel_choi(const std::string& path,
                              const ComplexMatrix& choi, std::size_t dim) {
  json j;
  j["format"] = kChannelFormat;
  j["convention"] = kConvention;
  j["choi_index_convention"] = kChoiIndexConvention;
  j["dim"] = dim;
  j["representation"] = "choi";
  j["data"] = matrix_to_json(choi);
  detail::write_file(path, j);
}

/// Build the validated map from loaded channel data.
inline CPMap to_cpmap(const ChannelData& ch, double cp_tol = 1e-10) {
  if (ch.representation == "choi") return CPMap::from_choi(ch.choi, cp_tol);
  return CPMap::from_kraus(ch.dim, ch.kraus, cp_tol);
}

inline void save_dilation(const std::string& path,
                          const StinespringDilation& dil,
                          const KrausSet& kraus) {
  json j;
  j["format"] = kDilationFormat;
  j["convention"] = kConvention;
  j["w_index_convention"] = kWIndexConvention;
  j["dim"] = dil.dim;
  j["ancilla_dim"] = dil.ancilla_dim;
  j["W"] = matrix_to_json(dil.w);
  json ops = json::array();
  for (const auto& v : kraus.ops) ops.push_back(matrix_to_json(v));
  j["kraus"] = std::move(ops);
  j["ancilla_eigenvalues"] = dil.basis.eigenvalues;
  detail::write_file(path, j);
}

/// Stable text rendering of a verification report: identical reports give
/// identical bytes. Timings are deliberately omitted (they never repeat);
/// the CLI sends them to stderr instead.
inline std::string render_report(const VerificationReport& report) {
  std::ostringstream out;
  char line[160];
  out << "cpdilate verification report\n";
  std::snprintf(line, sizeof(line), "seed: %llu\n",
                static_cast<unsigned long long>(report.seed));
  out << line;
  std::snprintf(line, sizeof(line), "trials: %zu\n", report.trials);
  out << line;
  std::snprintf(line, sizeof(line), "dim: %zu\n", report.dim);
  out << line;
  std::snprintf(line, sizeof(line), "ancilla_dim: %zu\n", report.ancilla_dim);
  out << line;
  out << "checks:\n";
  for (const auto& rec : report.checks) {
    std::snprintf(line, sizeof(line),
                  "  %-22s trials %-5zu residual %.6e  tol %.6e  %s\n",
                  rec.name.c_str(), rec.trials, rec.max_residual,
                  rec.tolerance, rec.pass ? "PASS" : "FAIL");
    out << line;
  }
  out << "overall: " << (report.overall_pass ? "PASS" : "FAIL") << '\n';
  return out.str();
}

}  // namespace cpdilate::io
