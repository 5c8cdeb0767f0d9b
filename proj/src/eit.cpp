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

#include "maxleak/eit.hpp"

#include <cmath>
#include <utility>

#include "maxleak/divergence.hpp"
#include "maxleak/leakage.hpp"

namespace maxleak {
namespace {

void check_regime(const Distribution& p1, const Distribution& p2,
                  const LeakageBudget& budget) {
  if (p1.size() != p2.size()) {
    throw Error(Errc::kDimensionMismatch,
                "hypotheses have " + std::to_string(p1.size()) + " and " +
                    std::to_string(p2.size()) + " letters");
  }
  if (p1.size() < 3) {
    throw Error(Errc::kAlphabetTooSmall,
                "high-privacy solver needs at least 3 letters, got " +
                    std::to_string(p1.size()));
  }
  if (budget.bits() > 1.0 + kProbabilitySumTol) {
    throw Error(Errc::kBudgetOutOfRange,
                "high-privacy solver needs a budget of at most 1 bit, got " +
                    std::to_string(budget.bits()));
  }
}

// Row templates of the closed-form maximizer: rows in i_plus put c = 2^l - 1
// on the first letter, rows in i_minus put it on the second, and both split
// the remaining 1 - c evenly over the other M - 2 letters.
std::pair<Eigen::RowVectorXd, Eigen::RowVectorXd> unique_rows(
    Eigen::Index m, const LeakageBudget& budget) {
  const double c = std::min(budget.linear() - 1.0, 1.0);
  const double rest = (1.0 - c) / static_cast<double>(m - 2);
  Eigen::RowVectorXd row_plus = Eigen::RowVectorXd::Constant(m, rest);
  Eigen::RowVectorXd row_minus = row_plus;
  row_plus(0) = c;
  row_plus(1) = 0.0;
  row_minus(0) = 0.0;
  row_minus(1) = c;
  return {std::move(row_plus), std::move(row_minus)};
}

}  // namespace

SignPartition sign_partition(const Distribution& p1, const Distribution& p2) {
  if (p1.size() != p2.size()) {
    throw Error(Errc::kDimensionMismatch,
                "hypotheses have " + std::to_string(p1.size()) + " and " +
                    std::to_string(p2.size()) + " letters");
  }
  SignPartition partition;
  for (Eigen::Index i = 0; i < p1.size(); ++i) {
    if (p1.probs()(i) - p2.probs()(i) > 0.0) {
      partition.i_plus.push_back(i);
    } else {
      partition.i_minus.push_back(i);
    }
  }
  if (partition.i_plus.empty()) {
    throw Error(Errc::kDegenerateHypotheses,
                "hypotheses coincide: no letter has more mass under the "
                "first one");
  }
  return partition;
}

ReferenceRow ReferenceRow::validated(Distribution w0, double delta) {
  const double cap = 1.0 / static_cast<double>(w0.size());
  if (!(delta >= 0.0 && delta <= cap + kProbabilitySumTol)) {
    throw Error(Errc::kDomainError,
                "reference radius " + std::to_string(delta) +
                    " outside [0, 1/M]");
  }
  return ReferenceRow{std::move(w0), delta};
}

double eit_objective(const Distribution& p1, const Distribution& p2,
                     const Mechanism& w, const ReferenceRow& w0) {
  if (p1.size() != p2.size() || p1.size() != w.size() ||
      w0.w0.size() != w.size()) {
    throw Error(Errc::kDimensionMismatch,
                "objective needs hypotheses, mechanism, and reference row "
                "over one alphabet");
  }
  const Eigen::RowVectorXd residual =
      (p1.probs() - p2.probs()) * w.rows();
  double sum = 0.0;
  for (Eigen::Index j = 0; j < residual.size(); ++j) {
    const double r = residual(j);
    // Residuals below the positivity floor count as zero: exactly cancelling
    // columns accumulate rounding noise of that order.
    if (std::abs(r) <= kPositivityFloor) continue;
    const double denom = w0.w0.probs()(j);
    if (denom <= 0.0) {
      throw Error(Errc::kDivisionByZeroSupport,
                  "letter " + std::to_string(j + 1) +
                      " has a nonzero residual over a zero reference "
                      "coordinate");
    }
    sum += r * r / denom;
  }
  return 0.5 * sum;
}

double eit_optimal_value(const Distribution& p1, const Distribution& p2,
                         const LeakageBudget& budget) {
  check_regime(p1, p2, budget);
  sign_partition(p1, p2);
  const double c = std::min(budget.linear() - 1.0, 1.0);
  const double l1 = (p1.probs() - p2.probs()).cwiseAbs().sum();
  return 0.5 * c * l1 * l1;
}

PutSolution solve_eit(const Distribution& p1, const Distribution& p2,
                      const LeakageBudget& budget) {
  check_regime(p1, p2, budget);
  const SignPartition partition = sign_partition(p1, p2);
  const Eigen::Index m = p1.size();
  const auto [row_plus, row_minus] = unique_rows(m, budget);

  Eigen::MatrixXd rows(m, m);
  for (const Eigen::Index i : partition.i_plus) rows.row(i) = row_plus;
  for (const Eigen::Index i : partition.i_minus) rows.row(i) = row_minus;
  Mechanism w = Mechanism::validated(std::move(rows));

  const ReferenceRow anchor = eit_anchor(p1, p2, budget);
  PutSolution solution{
      .mechanism = w,
      .utility_bits = eit_objective(p1, p2, w, anchor),
      .leakage_bits = budget.bits(),
      .method = SolveMethod::kEitHighPrivacy,
      .provenance = {},
  };
  solution.provenance.exact_utility_bits = utility(p1, p2, w);
  solution.provenance.surrogate_value = solution.utility_bits;
  return solution;
}

ReferenceRow eit_anchor(const Distribution& p1, const Distribution& p2,
                        const LeakageBudget& budget) {
  check_regime(p1, p2, budget);
  const auto [row_plus, row_minus] = unique_rows(p1.size(), budget);
  const Eigen::RowVectorXd mean = 0.5 * (row_plus + row_minus);
  Distribution w0 = Distribution::nonnegative(mean);
  const double delta = w0.probs().minCoeff();
  return ReferenceRow::validated(std::move(w0), delta);
}

ReferenceRow two_row_anchor(const Mechanism& w, double tol) {
  const Eigen::MatrixXd& rows = w.rows();
  const Eigen::Index m = w.size();
  Eigen::Index second = -1;
  for (Eigen::Index i = 1; i < m; ++i) {
    if ((rows.row(i) - rows.row(0)).cwiseAbs().maxCoeff() > tol) {
      if (second >= 0 &&
          (rows.row(i) - rows.row(second)).cwiseAbs().maxCoeff() > tol) {
        throw Error(Errc::kInvalidMechanism,
                    "mechanism has more than two distinct rows");
      }
      if (second < 0) second = i;
    }
  }
  if (second < 0) {
    throw Error(Errc::kInvalidMechanism,
                "mechanism has a single distinct row");
  }
  const Eigen::RowVectorXd mean = 0.5 * (rows.row(0) + rows.row(second));
  Distribution w0 = Distribution::nonnegative(mean, kFeasibilityTol);
  const double delta = w0.probs().minCoeff();
  return ReferenceRow::validated(std::move(w0), delta);
}

}  // namespace maxleak
