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

#include "maxleak/binary.hpp"

#include <cmath>
#include <utility>

namespace maxleak {
namespace {

// Output mass on the first letter under the vertex of the f1 branch:
// a(p) = (2 - 2^l) + p * (2^l - 1), written with c = 2^l - 1.
double first_letter_mass(double p, double c) { return (1.0 - c) + p * c; }

}  // namespace

BinaryParams BinaryParams::validated(double p1, double p2, double l) {
  if (!(p1 > 0.0 && p1 < 1.0)) {
    throw Error(Errc::kInvalidDistribution,
                "p1 = " + std::to_string(p1) + " outside (0, 1)");
  }
  if (!(p2 > 0.0 && p2 < 1.0)) {
    throw Error(Errc::kInvalidDistribution,
                "p2 = " + std::to_string(p2) + " outside (0, 1)");
  }
  if (p1 == p2) {
    throw Error(Errc::kDegenerateHypotheses,
                "hypotheses coincide at p = " + std::to_string(p1));
  }
  if (!std::isfinite(l) || l < 0.0) {
    throw Error(Errc::kBudgetOutOfRange,
                "budget " + std::to_string(l) + " bits is negative");
  }
  if (l > 1.0 + kProbabilitySumTol) {
    throw Error(Errc::kBudgetOutOfRange,
                "budget " + std::to_string(l) +
                    " bits exceeds log2(M) = 1 for M = 2");
  }
  return BinaryParams{p1, p2, std::min(l, 1.0)};
}

Distribution bernoulli(double p) {
  Eigen::RowVectorXd probs(2);
  probs << 1.0 - p, p;
  return Distribution::validated(std::move(probs));
}

Mechanism binary_mechanism(double rho1, double rho2) {
  Eigen::MatrixXd rows(2, 2);
  rows << 1.0 - rho1, rho1, rho2, 1.0 - rho2;
  return Mechanism::validated(std::move(rows));
}

double f1(const BinaryParams& params) {
  const double c = std::exp2(params.l) - 1.0;
  const double a1 = first_letter_mass(params.p1, c);
  const double a2 = first_letter_mass(params.p2, c);
  return a1 * std::log2(a1 / a2) +
         c * (1.0 - params.p1) *
             std::log2((1.0 - params.p1) / (1.0 - params.p2));
}

double f2(const BinaryParams& params) {
  const double c = std::exp2(params.l) - 1.0;
  const double a1 = params.p1 * c;
  const double a2 = params.p2 * c;
  // c = 0 collapses both hypotheses to the second letter; the divergence is 0.
  const double head =
      c == 0.0 ? 0.0 : a1 * std::log2(params.p1 / params.p2);
  return head + (1.0 - a1) * std::log2((1.0 - a1) / (1.0 - a2));
}

std::vector<Mechanism> binary_vertices(double l) {
  const double c = std::exp2(l) - 1.0;
  return {binary_mechanism(c, 1.0),       binary_mechanism(1.0, c),
          binary_mechanism(0.0, 1.0 - c), binary_mechanism(1.0 - c, 0.0),
          binary_mechanism(1.0, 0.0),     binary_mechanism(0.0, 1.0)};
}

PutSolution solve_binary(const BinaryParams& params) {
  const double c = std::exp2(params.l) - 1.0;
  const double v1 = f1(params);
  const double v2 = f2(params);
  const Mechanism w1 = binary_mechanism(c, 1.0);
  const Mechanism w2 = binary_mechanism(1.0, c);

  PutSolution solution{
      .mechanism = v1 >= v2 ? w1 : w2,
      .utility_bits = std::max(v1, v2),
      .leakage_bits = params.l,
      .method = SolveMethod::kBinaryExact,
      .provenance = {},
  };
  solution.provenance.exact_utility_bits = solution.utility_bits;
  if (v1 == v2) {
    solution.provenance.tie = true;
    solution.provenance.tie_candidates = {w1, w2};
  }
  return solution;
}

}  // namespace maxleak
