// Copyright 2026 The maxleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "maxleak/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>

namespace maxleak {
namespace {

double number_at(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) {
    throw Error(Errc::kDomainError, where + " is not a number");
  }
  return j.get<double>();
}

nlohmann::json rounded_row(const Eigen::RowVectorXd& row) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < row.size(); ++i) {
    arr.push_back(round_significant(row(i)));
  }
  return arr;
}

}  // namespace

double round_significant(double value, int digits) {
  if (!std::isfinite(value)) return value;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return std::strtod(buf, nullptr);
}

std::string format_significant(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return buf;
}

nlohmann::json to_json(const Distribution& p) { return rounded_row(p.probs()); }

nlohmann::json to_json(const Mechanism& w) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    rows.push_back(rounded_row(w.rows().row(i)));
  }
  return nlohmann::json{{"rows", std::move(rows)}};
}

Mechanism mechanism_from_json(const nlohmann::json& j, double tol) {
  const nlohmann::json* rows = &j;
  if (j.is_object()) {
    if (!j.contains("rows")) {
      throw Error(Errc::kInvalidMechanism,
                  "mechanism object lacks a \"rows\" field");
    }
    rows = &j.at("rows");
  }
  if (!rows->is_array() || rows->empty()) {
    throw Error(Errc::kInvalidMechanism,
                "mechanism must be a nonempty array of rows");
  }
  const Eigen::Index m = static_cast<Eigen::Index>(rows->size());
  Eigen::MatrixXd mat(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const nlohmann::json& row = (*rows)[static_cast<std::size_t>(i)];
    if (!row.is_array() ||
        static_cast<Eigen::Index>(row.size()) != m) {
      throw Error(Errc::kInvalidMechanism,
                  "row " + std::to_string(i + 1) + " does not have " +
                      std::to_string(m) + " entries");
    }
    for (Eigen::Index k = 0; k < m; ++k) {
      mat(i, k) = number_at(row[static_cast<std::size_t>(k)],
                            "mechanism entry (" + std::to_string(i + 1) +
                                "," + std::to_string(k + 1) + ")");
    }
  }
  // Range and row-sum diagnostics run on the raw entries; the survivors are
  // then snapped into [0, 1] so roundoff in the file cannot surface as
  // negative output masses downstream.
  Mechanism::validated(mat, tol);
  Eigen::MatrixXd clamped = mat.cwiseMax(0.0).cwiseMin(1.0);
  return Mechanism::validated(std::move(clamped),
                              tol * static_cast<double>(m + 1));
}

Distribution distribution_from_json(const nlohmann::json& j, bool strict,
                                    double tol) {
  const nlohmann::json* probs = &j;
  if (j.is_object()) {
    if (!j.contains("probs")) {
      throw Error(Errc::kInvalidDistribution,
                  "distribution object lacks a \"probs\" field");
    }
    probs = &j.at("probs");
  }
  if (!probs->is_array() || probs->empty()) {
    throw Error(Errc::kInvalidDistribution,
                "distribution must be a nonempty array");
  }
  Eigen::RowVectorXd vec(static_cast<Eigen::Index>(probs->size()));
  for (Eigen::Index i = 0; i < vec.size(); ++i) {
    vec(i) = number_at((*probs)[static_cast<std::size_t>(i)],
                       "distribution entry " + std::to_string(i + 1));
  }
  return strict ? Distribution::validated(std::move(vec), tol)
                : Distribution::nonnegative(std::move(vec), tol);
}

nlohmann::json to_json(const PutSolution& solution) {
  nlohmann::json provenance{
      {"exact_utility_bits",
       round_significant(solution.provenance.exact_utility_bits)},
      {"tie", solution.provenance.tie},
      {"evaluations", solution.provenance.evaluations},
      {"lower_bound", solution.provenance.lower_bound},
  };
  if (solution.provenance.surrogate_value.has_value()) {
    provenance["surrogate_value"] =
        round_significant(*solution.provenance.surrogate_value);
  }
  if (solution.provenance.tie) {
    nlohmann::json candidates = nlohmann::json::array();
    for (const Mechanism& w : solution.provenance.tie_candidates) {
      candidates.push_back(to_json(w));
    }
    provenance["tie_candidates"] = std::move(candidates);
  }
  if (!solution.provenance.rng.empty()) {
    provenance["rng"] = solution.provenance.rng;
    provenance["seed"] = solution.provenance.seed;
  }
  nlohmann::json out{
      {"mechanism", to_json(solution.mechanism)},
      {"utility_bits", round_significant(solution.utility_bits)},
      {"leakage_bits", round_significant(solution.leakage_bits)},
      {"method", to_string(solution.method)},
      {"provenance", std::move(provenance)},
  };
  if (solution.provenance.surrogate_value.has_value()) {
    out["surrogate_value"] =
        round_significant(*solution.provenance.surrogate_value);
  }
  return out;
}

nlohmann::json to_json(const OracleReport& report) {
  nlohmann::json out{
      {"method", to_string(report.method)},
      {"best_utility_bits", round_significant(report.best_utility)},
      {"evaluations", report.evaluations},
      {"is_lower_bound", report.is_lower_bound},
      {"mechanism", to_json(report.best_mechanism)},
  };
  if (!report.rng.empty()) {
    out["rng"] = report.rng;
    out["seed"] = report.seed;
  }
  return out;
}

nlohmann::json to_json(const SimulationReport& report) {
  return nlohmann::json{
      {"n", report.n},
      {"trials", report.trials},
      {"type1_rate", round_significant(report.type1_rate)},
      {"type2_rate", round_significant(report.type2_rate)},
      {"type2_rate_direct", round_significant(report.type2_rate_direct)},
      {"empirical_exponent", round_significant(report.empirical_exponent)},
      {"theoretical_exponent",
       round_significant(report.theoretical_exponent)},
      {"rng", report.rng},
      {"seed", report.seed},
  };
}

}  // namespace maxleak
