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

#ifndef MAXLEAK_TYPES_H_
#define MAXLEAK_TYPES_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace maxleak {

// All information quantities in this library are measured in bits (base-2
// logarithms).

// Entries of a source distribution must be at least this large; smaller
// entries are rejected, never clamped.
inline constexpr double kPositivityFloor = 1e-12;

// Tolerance for "sums to one" checks on freshly constructed objects.
inline constexpr double kProbabilitySumTol = 1e-12;

// Default tolerance for feasibility and other geometric checks.
inline constexpr double kFeasibilityTol = 1e-9;

enum class Errc {
  kDimensionMismatch,
  kNonPositiveSupport,
  kInvalidDistribution,
  kInvalidMechanism,
  kInvalidPermutation,
  kDomainError,
  kDegenerateHypotheses,
  kAlphabetTooSmall,
  kBudgetOutOfRange,
  kDivisionByZeroSupport,
  kInfeasible,
  kIterationLimitExceeded,
  kInternal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Process exit code for an error category: 2 for input/domain problems,
// 3 for solver resource limits, 4 for internal inconsistencies.
int exit_code_for(Errc code);

const char* errc_name(Errc code);

// A probability distribution over a finite alphabet, stored as a row vector.
class Distribution {
 public:
  // Validates a source distribution: alphabet size >= 2, every entry at
  // least kPositivityFloor, entries summing to 1 within sum_tol.
  static Distribution validated(Eigen::RowVectorXd probs,
                                double sum_tol = kProbabilitySumTol);

  // Same as validated() but entries may be zero.  Output distributions of a
  // mechanism can lose mass on some letters, so they are built through this
  // path.
  static Distribution nonnegative(Eigen::RowVectorXd probs,
                                  double sum_tol = kProbabilitySumTol);

  const Eigen::RowVectorXd& probs() const { return probs_; }
  Eigen::Index size() const { return probs_.size(); }

  bool strictly_positive(double floor = kPositivityFloor) const {
    return probs_.minCoeff() >= floor;
  }

 private:
  explicit Distribution(Eigen::RowVectorXd probs) : probs_(std::move(probs)) {}

  Eigen::RowVectorXd probs_;
};

// A row-stochastic square matrix; rows are inputs, columns are outputs.
class Mechanism {
 public:
  // Validates shape (square, size >= 2), entry range [0, 1], and row sums
  // equal to 1 within tol.  Diagnostics use 1-based row/column indices.
  static Mechanism validated(Eigen::MatrixXd rows,
                             double tol = kProbabilitySumTol);

  const Eigen::MatrixXd& rows() const { return rows_; }
  Eigen::Index size() const { return rows_.rows(); }

 private:
  explicit Mechanism(Eigen::MatrixXd rows) : rows_(std::move(rows)) {}

  Eigen::MatrixXd rows_;
};

// Reorders mechanism columns: column i of the result is column perm[i] of
// the input.  perm must be a permutation of {0, ..., M-1}.
Mechanism permute_columns(const Mechanism& w,
                          const std::vector<Eigen::Index>& perm);

// A privacy budget in bits.  linear() caches 2^bits.
class LeakageBudget {
 public:
  static LeakageBudget from_bits(double bits);

  double bits() const { return bits_; }
  double linear() const { return linear_; }

  // Budgets are meaningful only up to log2(M) for an alphabet of size m.
  // Values within slack above that cap are clamped onto it; larger values
  // are rejected.
  LeakageBudget clamped_for_alphabet(Eigen::Index m,
                                     double slack = kFeasibilityTol) const;

 private:
  LeakageBudget(double bits, double linear) : bits_(bits), linear_(linear) {}

  double bits_;
  double linear_;
};

// True when w respects the budget: entries nonnegative, rows summing to 1,
// and column-max sum at most 2^l, all within tol.
bool is_feasible(const Mechanism& w, const LeakageBudget& budget,
                 double tol = kFeasibilityTol);

enum class SolveMethod {
  kBinaryExact,
  kEitHighPrivacy,
  kLpHighUtility,
  kOracleGrid,
  kOracleVertexSample,
};

const char* to_string(SolveMethod method);
std::optional<SolveMethod> solve_method_from_string(const std::string& name);

struct Provenance {
  // Exact divergence of the pushforwards through the returned mechanism.
  double exact_utility_bits = 0.0;
  // Auxiliary objective value for methods that optimize a surrogate: the
  // quadratic objective for the high-privacy solver, the linearized
  // objective for the high-utility solver.
  std::optional<double> surrogate_value;
  // Set when two closed-form branches achieve the same value.
  bool tie = false;
  std::vector<Mechanism> tie_candidates;
  // Sampling metadata for randomized methods.
  std::string rng;
  std::uint64_t seed = 0;
  std::int64_t evaluations = 0;
  // True when the reported utility is only a lower bound on the optimum.
  bool lower_bound = false;
};

struct PutSolution {
  Mechanism mechanism;
  double utility_bits = 0.0;
  double leakage_bits = 0.0;
  SolveMethod method = SolveMethod::kBinaryExact;
  Provenance provenance;

  // Recomputes leakage and utility from the mechanism and compares them
  // with the stored values; throws Errc::kInternal on mismatch.  For the
  // high-privacy method utility_bits stores the quadratic surrogate, so the
  // check recomputes that surrogate instead of the exact divergence.
  void validate(const Distribution& p1, const Distribution& p2,
                double leakage_tol = kFeasibilityTol,
                double utility_tol = 1e-12) const;
};

struct TradeoffCurve {
  struct Point {
    LeakageBudget budget;
    PutSolution solution;
  };

  std::vector<Point> points;

  // Budgets must be strictly increasing.  Utilities must be non-decreasing
  // within utility_tol across consecutive points solved by the same method;
  // points solved by different methods report utilities on different scales
  // and are not compared.
  void validate(double utility_tol = kFeasibilityTol) const;
};

}  // namespace maxleak

#endif  // MAXLEAK_TYPES_H_
