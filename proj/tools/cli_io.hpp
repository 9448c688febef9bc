// SPDX-License-Identifier: Apache-2.0
//
// wideband-outage: outage exponents of wideband slow-fading parallel channels
// Copyright (C) 2026 The wideband-outage authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

// Parsing and formatting helpers for the command-line tool: grids, unit
// conversion, CSV cells and the JSON matrix config.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wideband/errors.hpp"
#include "wideband/matrix.hpp"
#include "wideband/mimo.hpp"

namespace wideband::cli {

inline constexpr double kLn2 = 0.6931471805599453;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

/// Energy per bit in dB: eta ln 2, i.e. eta_db - 1.59 dB.
inline double eta_bit_db(double eta) { return linear_to_db(eta * kLn2); }

/// 12 significant digits; inf/nan spelled "inf"/"nan".
inline std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw invalid_param("not a number: '" + s + "'");
  }
  if (used != s.size()) throw invalid_param("not a number: '" + s + "'");
  return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

/// "a:b:n" -> n points evenly spaced from a to b inclusive.
inline std::vector<double> parse_linspace(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw invalid_param("grid must look like start:stop:count, got '" + s + "'");
  const double a = parse_double(parts[0]);
  const double b = parse_double(parts[1]);
  const double n = parse_double(parts[2]);
  if (!(n >= 1.0) || n != std::floor(n) || n > 1e7)
    throw invalid_param("grid count must be a positive integer, got '" + parts[2] + "'");
  const auto count = static_cast<std::size_t>(n);
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = count == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
  return out;
}

/// "a:b:h" -> a, a+h, ... up to b (inclusive within half a step), computed
/// as a + i h to avoid drift.
inline std::vector<double> parse_range(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw invalid_param("range must look like start:stop:step, got '" + s + "'");
  const double a = parse_double(parts[0]);
  const double b = parse_double(parts[1]);
  const double h = parse_double(parts[2]);
  if (!(h > 0.0) || b < a) throw invalid_param("range needs step > 0 and stop >= start");
  const double steps = std::floor((b - a) / h + 0.5);
  if (steps > 1e7) throw invalid_param("range has too many points");
  std::vector<double> out;
  for (int i = 0; i <= static_cast<int>(steps); ++i) out.push_back(a + i * h);
  return out;
}

/// Comma list "1,2,3" or range "a:b:h".
inline std::vector<double> parse_list_or_range(const std::string& s) {
  if (s.find(':') != std::string::npos) return parse_range(s);
  std::vector<double> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_double(item));
  if (out.empty()) throw invalid_param("empty list");
  return out;
}

inline std::vector<int> parse_k_list(const std::string& s) {
  std::vector<int> out;
  for (double v : parse_list_or_range(s)) {
    if (v != std::floor(v) || v < 1.0 || v > 1e7)
      throw invalid_param("K values must be positive integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

/// Complex token: a real number or "re+imj" / "re-imj" / "imj" (i also
/// accepted as the imaginary unit).
inline cplx parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (c != ' ') s += c;
  if (s.empty()) throw invalid_param("empty complex token");
  const char last = s.back();
  if (last != 'j' && last != 'i') return {parse_double(s), 0.0};
  s.pop_back();
  // Split at the last sign that is not a leading sign or exponent sign.
  std::size_t cut = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      cut = k;
      break;
    }
  const auto imag_of = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_double(t);
  };
  if (cut == std::string::npos) return {0.0, imag_of(s)};
  return {parse_double(s.substr(0, cut)), imag_of(s.substr(cut))};
}

inline CMatrix matrix_from_json(const nlohmann::json& j, const std::string& name) {
  if (!j.is_array() || j.empty()) throw invalid_param("'" + name + "' must be a non-empty list of rows");
  const std::size_t n = j.size();
  std::vector<cplx> entries;
  entries.reserve(n * n);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != n) throw invalid_param("'" + name + "' must be square");
    for (const auto& cell : row) {
      if (cell.is_number())
        entries.emplace_back(cell.get<double>(), 0.0);
      else if (cell.is_string())
        entries.push_back(parse_complex(cell.get<std::string>()));
      else
        throw invalid_param("'" + name + "' entries must be numbers or \"re+imj\" strings");
    }
  }
  return CMatrix(n, std::move(entries));
}

/// Matrix config:
///   {"n_t": 2, "n_r": 2, "psi": [[...]], "sigma": [[...]]}
/// or the separable form
///   {"psi_t": [[...]], "psi_r": [[...]], "sigma": [[...]]}
/// Rows are lists of numbers or "re+imj" strings. sigma defaults to I/n_t.
inline mimo::CovariancePair load_covariance(const nlohmann::json& cfg) {
  if (!cfg.is_object()) throw invalid_param("matrix config must be a JSON object");
  const bool separable = cfg.contains("psi_t") || cfg.contains("psi_r");
  if (separable) {
    if (!cfg.contains("psi_t") || !cfg.contains("psi_r"))
      throw invalid_param("separable config needs both psi_t and psi_r");
    HermitianMatrix psi_t(matrix_from_json(cfg.at("psi_t"), "psi_t"));
    HermitianMatrix psi_r(matrix_from_json(cfg.at("psi_r"), "psi_r"));
    HermitianMatrix sigma = cfg.contains("sigma")
                                ? HermitianMatrix(matrix_from_json(cfg.at("sigma"), "sigma"))
                                : mimo::white_input(static_cast<int>(psi_t.dim()));
    return mimo::CovariancePair::separable(std::move(psi_t), std::move(psi_r), std::move(sigma));
  }
  if (!cfg.contains("psi") || !cfg.contains("n_t") || !cfg.contains("n_r"))
    throw invalid_param("config needs n_t, n_r and psi (or psi_t and psi_r)");
  const int n_t = cfg.at("n_t").get<int>();
  const int n_r = cfg.at("n_r").get<int>();
  HermitianMatrix psi(matrix_from_json(cfg.at("psi"), "psi"));
  HermitianMatrix sigma = cfg.contains("sigma")
                              ? HermitianMatrix(matrix_from_json(cfg.at("sigma"), "sigma"))
                              : mimo::white_input(n_t);
  return mimo::CovariancePair::full(std::move(psi), std::move(sigma), n_t, n_r);
}

inline mimo::CovariancePair load_covariance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_param("cannot open config file '" + path + "'");
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(in, nullptr, true, true);
  } catch (const nlohmann::json::exception& e) {
    throw invalid_param("config file '" + path + "': " + e.what());
  }
  try {
    return load_covariance(cfg);
  } catch (const nlohmann::json::exception& e) {
    throw invalid_param("config file '" + path + "': " + e.what());
  }
}

}  // namespace wideband::cli
