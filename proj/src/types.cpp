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

#include "maxleak/types.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "maxleak/divergence.hpp"
#include "maxleak/eit.hpp"
#include "maxleak/leakage.hpp"

namespace maxleak {
namespace {

std::string short_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

Eigen::RowVectorXd check_distribution(Eigen::RowVectorXd probs, bool strict,
                                      double sum_tol) {
  if (probs.size() < 2) {
    throw Error(Errc::kInvalidDistribution,
                "alphabet size " + std::to_string(probs.size()) +
                    " below minimum 2");
  }
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    if (!std::isfinite(probs(i))) {
      throw Error(Errc::kInvalidDistribution,
                  "entry " + std::to_string(i + 1) + " is not finite");
    }
    if (strict && probs(i) < kPositivityFloor) {
      throw Error(Errc::kNonPositiveSupport,
                  "entry " + std::to_string(i + 1) + " = " +
                      short_number(probs(i)) + " below positivity floor " +
                      short_number(kPositivityFloor));
    }
    if (!strict && probs(i) < 0.0) {
      throw Error(Errc::kInvalidDistribution,
                  "entry " + std::to_string(i + 1) + " is negative");
    }
  }
  const double sum = probs.sum();
  if (std::abs(sum - 1.0) > sum_tol) {
    throw Error(Errc::kInvalidDistribution,
                "entries sum to " + short_number(sum));
  }
  return probs;
}

}  // namespace

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::kIterationLimitExceeded:
      return 3;
    case Errc::kInfeasible:
    case Errc::kInternal:
      return 4;
    default:
      return 2;
  }
}

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::kDimensionMismatch:
      return "DimensionMismatch";
    case Errc::kNonPositiveSupport:
      return "NonPositiveSupport";
    case Errc::kInvalidDistribution:
      return "InvalidDistribution";
    case Errc::kInvalidMechanism:
      return "InvalidMechanism";
    case Errc::kInvalidPermutation:
      return "InvalidPermutation";
    case Errc::kDomainError:
      return "DomainError";
    case Errc::kDegenerateHypotheses:
      return "DegenerateHypotheses";
    case Errc::kAlphabetTooSmall:
      return "AlphabetTooSmall";
    case Errc::kBudgetOutOfRange:
      return "BudgetOutOfRange";
    case Errc::kDivisionByZeroSupport:
      return "DivisionByZeroSupport";
    case Errc::kInfeasible:
      return "Infeasible";
    case Errc::kIterationLimitExceeded:
      return "IterationLimitExceeded";
    case Errc::kInternal:
      return "Internal";
  }
  return "Unknown";
}

Distribution Distribution::validated(Eigen::RowVectorXd probs,
                                     double sum_tol) {
  return Distribution(
      check_distribution(std::move(probs), /*strict=*/true, sum_tol));
}

Distribution Distribution::nonnegative(Eigen::RowVectorXd probs,
                                       double sum_tol) {
  return Distribution(
      check_distribution(std::move(probs), /*strict=*/false, sum_tol));
}

Mechanism Mechanism::validated(Eigen::MatrixXd rows, double tol) {
  if (rows.rows() != rows.cols()) {
    throw Error(Errc::kInvalidMechanism,
                "mechanism is " + std::to_string(rows.rows()) + "x" +
                    std::to_string(rows.cols()) + ", expected square");
  }
  if (rows.rows() < 2) {
    throw Error(Errc::kInvalidMechanism,
                "alphabet size " + std::to_string(rows.rows()) +
                    " below minimum 2");
  }
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < rows.cols(); ++j) {
      const double v = rows(i, j);
      if (!std::isfinite(v) || v < -tol || v > 1.0 + tol) {
        throw Error(Errc::kInvalidMechanism,
                    "entry (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + ") = " + short_number(v) +
                        " outside [0, 1]");
      }
    }
    const double sum = rows.row(i).sum();
    if (std::abs(sum - 1.0) > tol) {
      throw Error(Errc::kInvalidMechanism, "row " + std::to_string(i + 1) +
                                               " sums to " +
                                               short_number(sum));
    }
  }
  return Mechanism(std::move(rows));
}

Mechanism permute_columns(const Mechanism& w,
                          const std::vector<Eigen::Index>& perm) {
  const Eigen::Index m = w.size();
  if (static_cast<Eigen::Index>(perm.size()) != m) {
    throw Error(Errc::kInvalidPermutation,
                "permutation has " + std::to_string(perm.size()) +
                    " entries for a " + std::to_string(m) + "-letter "
                    "mechanism");
  }
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  for (const Eigen::Index p : perm) {
    if (p < 0 || p >= m || seen[static_cast<std::size_t>(p)]) {
      throw Error(Errc::kInvalidPermutation,
                  "permutation is not a bijection on {0..M-1}");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
  Eigen::MatrixXd out(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    out.col(j) = w.rows().col(perm[static_cast<std::size_t>(j)]);
  }
  return Mechanism::validated(std::move(out));
}

LeakageBudget LeakageBudget::from_bits(double bits) {
  if (!std::isfinite(bits) || bits < -kProbabilitySumTol) {
    throw Error(Errc::kBudgetOutOfRange,
                "budget " + short_number(bits) + " bits is negative");
  }
  const double clamped = std::max(0.0, bits);
  return LeakageBudget(clamped, std::exp2(clamped));
}

LeakageBudget LeakageBudget::clamped_for_alphabet(Eigen::Index m,
                                                  double slack) const {
  if (m < 2) {
    throw Error(Errc::kAlphabetTooSmall,
                "alphabet size " + std::to_string(m) + " below minimum 2");
  }
  const double cap = std::log2(static_cast<double>(m));
  if (bits_ <= cap) return *this;
  if (bits_ <= cap + slack) return LeakageBudget(cap, std::exp2(cap));
  throw Error(Errc::kBudgetOutOfRange,
              "budget " + short_number(bits_) + " bits exceeds log2(M) = " +
                  short_number(cap) + " for M = " + std::to_string(m));
}

bool is_feasible(const Mechanism& w, const LeakageBudget& budget,
                 double tol) {
  const Eigen::MatrixXd& m = w.rows();
  if (m.minCoeff() < -tol) return false;
  if (((m.rowwise().sum().array() - 1.0).abs() > tol).any()) return false;
  return m.colwise().maxCoeff().sum() <= budget.linear() + tol;
}

const char* to_string(SolveMethod method) {
  switch (method) {
    case SolveMethod::kBinaryExact:
      return "BinaryExact";
    case SolveMethod::kEitHighPrivacy:
      return "EitHighPrivacy";
    case SolveMethod::kLpHighUtility:
      return "LpHighUtility";
    case SolveMethod::kOracleGrid:
      return "OracleGrid";
    case SolveMethod::kOracleVertexSample:
      return "OracleVertexSample";
  }
  return "Unknown";
}

std::optional<SolveMethod> solve_method_from_string(const std::string& name) {
  if (name == "BinaryExact") return SolveMethod::kBinaryExact;
  if (name == "EitHighPrivacy") return SolveMethod::kEitHighPrivacy;
  if (name == "LpHighUtility") return SolveMethod::kLpHighUtility;
  if (name == "OracleGrid") return SolveMethod::kOracleGrid;
  if (name == "OracleVertexSample") return SolveMethod::kOracleVertexSample;
  return std::nullopt;
}

void PutSolution::validate(const Distribution& p1, const Distribution& p2,
                           double leakage_tol, double utility_tol) const {
  const double leak = maximal_leakage(mechanism);
  if (std::abs(leak - leakage_bits) > leakage_tol) {
    throw Error(Errc::kInternal,
                "solution leakage " + std::to_string(leakage_bits) +
                    " bits does not match recomputed " + std::to_string(leak));
  }
  double recomputed = 0.0;
  if (method == SolveMethod::kEitHighPrivacy) {
    // utility_bits carries the quadratic surrogate for this method.  A
    // rank-one mechanism (zero budget) has surrogate zero and no two-row
    // anchor, so it is checked directly.
    if (is_rank_one(mechanism, kProbabilitySumTol)) {
      recomputed = 0.0;
    } else {
      recomputed = eit_objective(p1, p2, mechanism, two_row_anchor(mechanism));
    }
  } else {
    recomputed = utility(p1, p2, mechanism);
  }
  if (std::abs(recomputed - utility_bits) > utility_tol) {
    throw Error(Errc::kInternal,
                "solution utility " + std::to_string(utility_bits) +
                    " does not match recomputed " + std::to_string(recomputed));
  }
}

void TradeoffCurve::validate(double utility_tol) const {
  for (std::size_t k = 1; k < points.size(); ++k) {
    const Point& prev = points[k - 1];
    const Point& cur = points[k];
    if (!(cur.budget.bits() > prev.budget.bits())) {
      throw Error(Errc::kInternal,
                  "curve budgets are not strictly increasing at point " +
                      std::to_string(k + 1));
    }
    if (cur.solution.method == prev.solution.method &&
        cur.solution.utility_bits < prev.solution.utility_bits - utility_tol) {
      throw Error(Errc::kInternal,
                  "curve utility decreases at point " + std::to_string(k + 1) +
                      " despite a larger budget");
    }
  }
}

}  // namespace maxleak
