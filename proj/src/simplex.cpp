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

#include "maxleak/simplex.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "maxleak/types.hpp"

namespace maxleak {
namespace {

// Full-tableau simplex state: t is the m x (n_total + 1) matrix B^-1 [A | b],
// basis[i] names the basic variable of row i.  Reduced costs are recomputed
// from the cost vector on every pivot, which is cheap at the problem sizes
// this library builds.
struct Tableau {
  Eigen::MatrixXd t;
  std::vector<Eigen::Index> basis;
  Eigen::Index n_total = 0;  // columns excluding the rhs

  Eigen::Index rows() const { return t.rows(); }
  double rhs(Eigen::Index i) const { return t(i, n_total); }
};

double reduced_cost(const Tableau& tab, const Eigen::VectorXd& cost,
                    Eigen::Index j) {
  double r = cost(j);
  for (Eigen::Index i = 0; i < tab.rows(); ++i) {
    const double coef = tab.t(i, j);
    if (coef != 0.0) r -= cost(tab.basis[static_cast<std::size_t>(i)]) * coef;
  }
  return r;
}

void pivot(Tableau& tab, Eigen::Index row, Eigen::Index col) {
  tab.t.row(row) /= tab.t(row, col);
  for (Eigen::Index i = 0; i < tab.rows(); ++i) {
    if (i == row) continue;
    const double factor = tab.t(i, col);
    if (factor != 0.0) tab.t.row(i) -= factor * tab.t.row(row);
  }
  tab.basis[static_cast<std::size_t>(row)] = col;
}

// Runs Bland-rule pivots until optimality, unboundedness, or the iteration
// cap.  Columns j with allowed(j) == false never enter the basis.
SimplexStatus iterate(Tableau& tab, const Eigen::VectorXd& cost,
                      const std::vector<bool>& allowed, double tol,
                      std::int64_t max_iterations, std::int64_t& iterations) {
  for (;;) {
    Eigen::Index entering = -1;
    for (Eigen::Index j = 0; j < tab.n_total; ++j) {
      if (!allowed[static_cast<std::size_t>(j)]) continue;
      if (reduced_cost(tab, cost, j) > tol) {
        entering = j;
        break;
      }
    }
    if (entering < 0) return SimplexStatus::kOptimal;

    Eigen::Index leaving = -1;
    double best_ratio = 0.0;
    for (Eigen::Index i = 0; i < tab.rows(); ++i) {
      const double coef = tab.t(i, entering);
      if (coef <= tol) continue;
      const double ratio = tab.rhs(i) / coef;
      if (leaving < 0 || ratio < best_ratio ||
          (ratio == best_ratio &&
           tab.basis[static_cast<std::size_t>(i)] <
               tab.basis[static_cast<std::size_t>(leaving)])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving < 0) return SimplexStatus::kUnbounded;

    if (++iterations > max_iterations) return SimplexStatus::kIterationLimit;
    pivot(tab, leaving, entering);
  }
}

}  // namespace

SimplexResult simplex_maximize(const Eigen::VectorXd& c,
                               const Eigen::MatrixXd& a_ub,
                               const Eigen::VectorXd& b_ub,
                               const Eigen::MatrixXd& a_eq,
                               const Eigen::VectorXd& b_eq,
                               const SimplexOptions& options) {
  const Eigen::Index n = c.size();
  const Eigen::Index m_ub = b_ub.size();
  const Eigen::Index m_eq = b_eq.size();
  if ((m_ub > 0 && (a_ub.rows() != m_ub || a_ub.cols() != n)) ||
      (m_eq > 0 && (a_eq.rows() != m_eq || a_eq.cols() != n))) {
    throw Error(Errc::kDimensionMismatch,
                "constraint matrices do not match the objective length");
  }
  const Eigen::Index m = m_ub + m_eq;
  const double tol = options.pivot_tol;

  // Assemble equality-form rows with nonnegative right-hand sides.  Slack
  // columns come after the structural variables; rows whose slack cannot
  // start basic (negated inequalities and all equalities) get an artificial.
  std::vector<Eigen::Index> artificial_rows;
  for (Eigen::Index i = 0; i < m_ub; ++i) {
    if (b_ub(i) < 0.0) artificial_rows.push_back(i);
  }
  for (Eigen::Index i = 0; i < m_eq; ++i) artificial_rows.push_back(m_ub + i);
  const Eigen::Index n_art = static_cast<Eigen::Index>(artificial_rows.size());
  const Eigen::Index n_total = n + m_ub + n_art;

  Tableau tab;
  tab.n_total = n_total;
  tab.t = Eigen::MatrixXd::Zero(m, n_total + 1);
  tab.basis.assign(static_cast<std::size_t>(m), -1);
  for (Eigen::Index i = 0; i < m_ub; ++i) {
    const double sign = b_ub(i) < 0.0 ? -1.0 : 1.0;
    tab.t.block(i, 0, 1, n) = sign * a_ub.row(i);
    tab.t(i, n + i) = sign;  // slack
    tab.t(i, n_total) = sign * b_ub(i);
    if (sign > 0.0) tab.basis[static_cast<std::size_t>(i)] = n + i;
  }
  for (Eigen::Index i = 0; i < m_eq; ++i) {
    const double sign = b_eq(i) < 0.0 ? -1.0 : 1.0;
    tab.t.block(m_ub + i, 0, 1, n) = sign * a_eq.row(i);
    tab.t(m_ub + i, n_total) = sign * b_eq(i);
  }
  for (Eigen::Index k = 0; k < n_art; ++k) {
    const Eigen::Index row = artificial_rows[static_cast<std::size_t>(k)];
    tab.t(row, n + m_ub + k) = 1.0;
    tab.basis[static_cast<std::size_t>(row)] = n + m_ub + k;
  }

  const std::int64_t cap = options.max_iterations > 0
                               ? options.max_iterations
                               : 50 * (n_total + m);
  std::int64_t iterations = 0;
  std::vector<bool> allow_all(static_cast<std::size_t>(n_total), true);

  SimplexResult result;
  result.x = Eigen::VectorXd::Zero(n);

  if (n_art > 0) {
    // Phase 1: maximize minus the sum of artificials.
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n_total);
    phase1.tail(n_art).setConstant(-1.0);
    const SimplexStatus status =
        iterate(tab, phase1, allow_all, tol, cap, iterations);
    if (status == SimplexStatus::kIterationLimit ||
        status == SimplexStatus::kUnbounded) {
      // Phase 1 is bounded above by zero, so unboundedness cannot be
      // reported here; treat both as running out of pivots.
      result.status = SimplexStatus::kIterationLimit;
      result.iterations = iterations;
      return result;
    }
    double infeasibility = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (tab.basis[static_cast<std::size_t>(i)] >= n + m_ub) {
        infeasibility += tab.rhs(i);
      }
    }
    if (infeasibility > tol) {
      result.status = SimplexStatus::kInfeasible;
      result.iterations = iterations;
      return result;
    }
    // Drive artificials out of the basis; rows with no eligible pivot are
    // redundant and harmless, but their artificial must stay fenced out.
    for (Eigen::Index i = 0; i < m; ++i) {
      if (tab.basis[static_cast<std::size_t>(i)] < n + m_ub) continue;
      for (Eigen::Index j = 0; j < n + m_ub; ++j) {
        if (std::abs(tab.t(i, j)) > tol) {
          pivot(tab, i, j);
          ++iterations;
          break;
        }
      }
    }
  }

  // Phase 2: artificial columns are barred from entering.
  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(n_total);
  phase2.head(n) = c;
  std::vector<bool> allowed(static_cast<std::size_t>(n_total), true);
  for (Eigen::Index j = n + m_ub; j < n_total; ++j) {
    allowed[static_cast<std::size_t>(j)] = false;
  }
  result.status = iterate(tab, phase2, allowed, tol, cap, iterations);
  result.iterations = iterations;
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index var = tab.basis[static_cast<std::size_t>(i)];
    if (var >= 0 && var < n) result.x(var) = tab.rhs(i);
  }
  result.objective = c.dot(result.x);
  return result;
}

}  // namespace maxleak
