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

#ifndef MAXLEAK_LP_H_
#define MAXLEAK_LP_H_

#include <cstdint>

#include <Eigen/Dense>

#include "maxleak/simplex.hpp"
#include "maxleak/types.hpp"

namespace maxleak {

// High-utility solver (l >= log2(M-1)).
//
// Near the identity mechanism the divergence objective is linear to first
// order:  D(p1 w || p2 w) ~ trace(psi w'), with psi the gradient of the
// objective at w = identity.  Maximizing that trace over the budget polytope
// is a linear program whose optimal vertices keep at most two nonzero
// entries per row.

// Gradient of the divergence objective at the identity:
//   psi_ij = p1_i (log2(p1_j / p2_j) + log2 e) - p2_i (p1_j / p2_j) log2 e.
// Its diagonal simplifies to p1_i log2(p1_i / p2_i) and dominates every
// off-diagonal entry of its row.
struct PsiMatrix {
  Eigen::MatrixXd entries;
};

PsiMatrix psi_matrix(const Distribution& p1, const Distribution& p2);

// The linearized objective trace(psi w') = sum_ij psi_ij w_ij.
double trace_objective(const PsiMatrix& psi, const Mechanism& w);
double trace_objective(const PsiMatrix& psi, const Eigen::MatrixXd& w);

// Budget polytope in the variables x = (w_11 ... w_MM, eps_1 ... eps_M):
// w_ij <= eps_j, sum_j eps_j <= 2^l, rows of w summing to one, w >= 0
// (eps >= 0 is implied).
struct LeakagePolytope {
  Eigen::Index m = 0;
  Eigen::MatrixXd a_ub;
  Eigen::VectorXd b_ub;
  Eigen::MatrixXd a_eq;
  Eigen::VectorXd b_eq;

  Eigen::Index variable_count() const { return m * m + m; }
  // Counts the entrywise nonnegativity of w; the implied eps >= 0 rows are
  // not counted.
  Eigen::Index constraint_count() const { return 2 * m * m + m + 1; }
};

LeakagePolytope leakage_polytope(Eigen::Index m, const LeakageBudget& budget);

struct LpProblem {
  LeakagePolytope polytope;
  PsiMatrix psi;
  Eigen::VectorXd objective;
  double budget_bits = 0.0;
  // True when the budget sits below log2(M-1), where the linearization is
  // not trusted.  Building the problem is still allowed.
  bool below_regime = false;

  Eigen::Index variable_count() const { return polytope.variable_count(); }
  Eigen::Index constraint_count() const { return polytope.constraint_count(); }
};

LpProblem build_lp(const Distribution& p1, const Distribution& p2,
                   const LeakageBudget& budget);

// Solves the linear program and reports the vertex mechanism.  utility_bits
// stores the exact divergence through that mechanism; the linear objective
// value is recorded as the surrogate.
PutSolution solve_lp(const Distribution& p1, const Distribution& p2,
                     const LeakageBudget& budget,
                     const SimplexOptions& options = {});

// A feasible warm-start style mechanism for l in [log2(M-1), log2 M]:
// diagonal entries 2^l / M and one off-diagonal entry (M - 2^l) / M per row,
// placed at the row's second-largest psi entry (ties break to the lowest
// column).  Its linear value lower-bounds the LP optimum.
Mechanism diagonal_pair_witness(const PsiMatrix& psi,
                                const LeakageBudget& budget);

struct StructureReport {
  Eigen::Index zero_entries = 0;
  Eigen::Index required_zero_entries = 0;
  double diagonal_min = 0.0;
  Eigen::Index max_nonzeros_per_row = 0;
  bool diagonal_positive = false;
  bool pass = false;
};

// Checks the sparsity pattern expected of optimal vertices in the
// high-utility regime: at least M(M-2) zero entries, a strictly positive
// diagonal, and at most two nonzero entries per row.
StructureReport check_vertex_structure(const Mechanism& w,
                                       double tol = kFeasibilityTol);

}  // namespace maxleak

#endif  // MAXLEAK_LP_H_
