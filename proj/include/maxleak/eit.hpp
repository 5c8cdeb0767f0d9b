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

#ifndef MAXLEAK_EIT_H_
#define MAXLEAK_EIT_H_

#include <vector>

#include "maxleak/types.hpp"

namespace maxleak {

// High-privacy solver (l <= 1 bit, M >= 3).
//
// Near zero leakage every row of a feasible mechanism stays close to a
// common reference row w0, and the divergence objective is well approximated
// by the quadratic form
//     (1/2) * sum_j ((p1 - p2) w)_j^2 / w0_j.
// That surrogate is maximized in closed form by a mechanism with two unique
// rows, indexed by the sign of p1 - p2.

struct SignPartition {
  // Letters where p1 - p2 is strictly positive.
  std::vector<Eigen::Index> i_plus;
  // Letters where p1 - p2 is zero or negative.
  std::vector<Eigen::Index> i_minus;
};

// Both index sets are nonempty for valid inputs; equal distributions are
// rejected as degenerate.
SignPartition sign_partition(const Distribution& p1, const Distribution& p2);

// Reference output row for the quadratic surrogate.  delta records the
// intended neighborhood radius and is informational; it is not enforced.
struct ReferenceRow {
  Distribution w0;
  double delta = 0.0;

  // Requires delta in [0, 1/M].
  static ReferenceRow validated(Distribution w0, double delta = 0.0);
};

// The quadratic surrogate objective.  Output letters where (p1 - p2) w
// vanishes contribute nothing regardless of w0; a nonzero residual over a
// zero w0 coordinate is rejected.
double eit_objective(const Distribution& p1, const Distribution& p2,
                     const Mechanism& w, const ReferenceRow& w0);

// Optimal surrogate value: (2^l - 1) / 2 * ||p1 - p2||_1^2.
double eit_optimal_value(const Distribution& p1, const Distribution& p2,
                         const LeakageBudget& budget);

// Closed-form maximizer of the surrogate.  Column 1 carries 2^l - 1 on the
// i_plus rows, column 2 carries 2^l - 1 on the i_minus rows, and each of the
// remaining M - 2 columns is constant, splitting the leftover row mass
// 2 - 2^l evenly.  utility_bits stores the surrogate value; the exact
// divergence is recorded in the provenance.
PutSolution solve_eit(const Distribution& p1, const Distribution& p2,
                      const LeakageBudget& budget);

// Reference row matched to solve_eit's mechanism: the average of its two
// unique rows, (2^l-1)/2 on the first two letters and the even split on the
// rest.
ReferenceRow eit_anchor(const Distribution& p1, const Distribution& p2,
                        const LeakageBudget& budget);

// Average of the two distinct rows of a two-row mechanism.  Rejects
// mechanisms that do not have exactly two distinct rows within tol.
ReferenceRow two_row_anchor(const Mechanism& w, double tol = kFeasibilityTol);

}  // namespace maxleak

#endif  // MAXLEAK_EIT_H_
