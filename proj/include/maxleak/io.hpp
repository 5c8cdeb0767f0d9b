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

#ifndef MAXLEAK_IO_H_
#define MAXLEAK_IO_H_

#include <string>

#include <json.hpp>

#include "maxleak/oracle.hpp"
#include "maxleak/types.hpp"

namespace maxleak {

// Numbers are emitted with 12 significant digits.  Values are rounded to
// that precision before insertion into a JSON tree, so the serialized text
// never carries more digits and re-parsing reproduces the emitted value.
double round_significant(double value, int digits = 12);
std::string format_significant(double value, int digits = 12);

nlohmann::json to_json(const Distribution& p);
nlohmann::json to_json(const Mechanism& w);

// Mechanism JSON is {"rows": [[...], ...]}; a bare array of rows is also
// accepted on input.  Distributions are arrays, with {"probs": [...]} also
// accepted.  File inputs are validated at `tol`, looser than the tolerance
// for freshly computed matrices since emitted text is rounded.
Mechanism mechanism_from_json(const nlohmann::json& j,
                              double tol = kFeasibilityTol);
Distribution distribution_from_json(const nlohmann::json& j, bool strict,
                                    double tol = kFeasibilityTol);

nlohmann::json to_json(const PutSolution& solution);
nlohmann::json to_json(const OracleReport& report);
nlohmann::json to_json(const SimulationReport& report);

}  // namespace maxleak

#endif  // MAXLEAK_IO_H_
