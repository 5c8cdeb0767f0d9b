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

#include "maxleak/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "maxleak/divergence.hpp"
#include "maxleak/leakage.hpp"

namespace maxleak {
namespace {

void check_pair(const Distribution& p1, const Distribution& p2) {
  if (p1.size() != p2.size()) {
    throw Error(Errc::kDimensionMismatch,
                "hypotheses have " + std::to_string(p1.size()) + " and " +
                    std::to_string(p2.size()) + " letters");
  }
}

}  // namespace

PsiMatrix psi_matrix(const Distribution& p1, const Distribution& p2) {
  check_pair(p1, p2);
  const Eigen::Index m = p1.size();
  constexpr double log2e = std::numbers::log2e;
  Eigen::MatrixXd entries(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double ratio = p1.probs()(j) / p2.probs()(j);
      if (i == j) {
        // The general formula collapses exactly on the diagonal; the short
        // form avoids its cancellation.
        entries(i, j) = p1.probs()(i) * std::log2(ratio);
      } else {
        entries(i, j) = p1.probs()(i) * (std::log2(ratio) + log2e) -
                        p2.probs()(i) * ratio * log2e;
      }
    }
  }
  return PsiMatrix{std::move(entries)};
}

double trace_objective(const PsiMatrix& psi, const Eigen::MatrixXd& w) {
  if (psi.entries.rows() != w.rows() || psi.entries.cols() != w.cols()) {
    throw Error(Errc::kDimensionMismatch,
                "gradient and mechanism shapes differ");
  }
  return psi.entries.cwiseProduct(w).sum();
}

double trace_objective(const PsiMatrix& psi, const Mechanism& w) {
  return trace_objective(psi, w.rows());
}

LeakagePolytope leakage_polytope(Eigen::Index m, const LeakageBudget& budget) {
  if (m < 2) {
    throw Error(Errc::kAlphabetTooSmall,
                "alphabet size " + std::to_string(m) + " below minimum 2");
  }
  LeakagePolytope poly;
  poly.m = m;
  const Eigen::Index vars = poly.variable_count();
  const Eigen::Index n_ub = 2 * m * m + 1;
  poly.a_ub = Eigen::MatrixXd::Zero(n_ub, vars);
  poly.b_ub = Eigen::VectorXd::Zero(n_ub);
  poly.a_eq = Eigen::MatrixXd::Zero(m, vars);
  poly.b_eq = Eigen::VectorXd::Ones(m);

  // x = (w_11 ... w_1M, ..., w_M1 ... w_MM, eps_1 ... eps_M).
  const auto wvar = [m](Eigen::Index i, Eigen::Index j) { return i * m + j; };
  const auto evar = [m](Eigen::Index j) { return m * m + j; };

  Eigen::Index row = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      poly.a_ub(row, wvar(i, j)) = 1.0;  // w_ij <= eps_j
      poly.a_ub(row, evar(j)) = -1.0;
      ++row;
    }
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      poly.a_ub(row, wvar(i, j)) = -1.0;  // w_ij >= 0, kept explicit
      ++row;
    }
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    poly.a_ub(row, evar(j)) = 1.0;  // sum_j eps_j <= 2^l
  }
  poly.b_ub(row) = budget.linear();

  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      poly.a_eq(i, wvar(i, j)) = 1.0;  // rows sum to one
    }
  }
  return poly;
}

LpProblem build_lp(const Distribution& p1, const Distribution& p2,
                   const LeakageBudget& budget) {
  check_pair(p1, p2);
  const Eigen::Index m = p1.size();
  LpProblem problem{
      .polytope = leakage_polytope(m, budget.clamped_for_alphabet(m)),
      .psi = psi_matrix(p1, p2),
      .objective = Eigen::VectorXd::Zero(m * m + m),
      .budget_bits = budget.bits(),
      .below_regime =
          budget.bits() <
          std::log2(static_cast<double>(m - 1)) - kFeasibilityTol,
  };
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      problem.objective(i * m + j) = problem.psi.entries(i, j);
    }
  }
  return problem;
}

PutSolution solve_lp(const Distribution& p1, const Distribution& p2,
                     const LeakageBudget& budget,
                     const SimplexOptions& options) {
  const LpProblem problem = build_lp(p1, p2, budget);
  const LeakagePolytope& poly = problem.polytope;
  const SimplexResult result =
      simplex_maximize(problem.objective, poly.a_ub, poly.b_ub, poly.a_eq,
                       poly.b_eq, options);
  if (result.status == SimplexStatus::kIterationLimit) {
    throw Error(Errc::kIterationLimitExceeded,
                "simplex ran out of pivots after " +
                    std::to_string(result.iterations) + " iterations");
  }
  if (result.status != SimplexStatus::kOptimal) {
    // The budget polytope always contains the uniform mechanism, so neither
    // infeasibility nor unboundedness can be legitimate.
    throw Error(Errc::kInfeasible,
                "simplex reported an impossible status on the budget "
                "polytope");
  }

  const Eigen::Index m = p1.size();
  Eigen::MatrixXd rows(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      // Vertex coordinates carry simplex roundoff; snap into [0, 1].
      rows(i, j) = std::clamp(result.x(i * m + j), 0.0, 1.0);
    }
  }
  Mechanism w = Mechanism::validated(std::move(rows), kFeasibilityTol);

  PutSolution solution{
      .mechanism = w,
      .utility_bits = utility(p1, p2, w),
      .leakage_bits = maximal_leakage(w),
      .method = SolveMethod::kLpHighUtility,
      .provenance = {},
  };
  solution.provenance.exact_utility_bits = solution.utility_bits;
  solution.provenance.surrogate_value = result.objective;
  solution.provenance.evaluations = result.iterations;
  return solution;
}

Mechanism diagonal_pair_witness(const PsiMatrix& psi,
                                const LeakageBudget& budget) {
  const Eigen::Index m = psi.entries.rows();
  if (m < 3) {
    throw Error(Errc::kAlphabetTooSmall,
                "witness needs at least 3 letters, got " + std::to_string(m));
  }
  const double linear = budget.linear();
  const double lo = static_cast<double>(m - 1);
  const double hi = static_cast<double>(m);
  if (linear < lo - kFeasibilityTol || linear > hi + kFeasibilityTol) {
    throw Error(Errc::kBudgetOutOfRange,
                "witness needs a budget in [log2(M-1), log2(M)]");
  }
  const double diag = std::min(linear, hi) / hi;
  const double off = 1.0 - diag;
  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    rows(i, i) = diag;
    Eigen::Index second = -1;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (j == i) continue;
      if (second < 0 || psi.entries(i, j) > psi.entries(i, second)) {
        second = j;
      }
    }
    rows(i, second) += off;
  }
  return Mechanism::validated(std::move(rows));
}

StructureReport check_vertex_structure(const Mechanism& w, double tol) {
  const Eigen::Index m = w.size();
  StructureReport report;
  report.required_zero_entries = m * (m - 2);
  report.diagonal_min = w.rows().diagonal().minCoeff();
  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::Index nonzeros = 0;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (std::abs(w.rows()(i, j)) <= tol) {
        ++report.zero_entries;
      } else {
        ++nonzeros;
      }
    }
    report.max_nonzeros_per_row =
        std::max(report.max_nonzeros_per_row, nonzeros);
  }
  report.diagonal_positive = report.diagonal_min > tol;
  report.pass = report.diagonal_positive &&
                report.zero_entries >= report.required_zero_entries &&
                report.max_nonzeros_per_row <= 2;
  return report;
}

}  // namespace maxleak
