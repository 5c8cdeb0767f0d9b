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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include <doctest.h>

#include "maxleak/divergence.hpp"
#include "maxleak/eit.hpp"
#include "maxleak/leakage.hpp"
#include "maxleak/rng.hpp"
#include "maxleak/types.hpp"
#include "test_util.hpp"

namespace maxleak {
namespace {

using testing::random_distribution;
using testing::random_pair;

// Pair whose difference splits the reference mass roughly in half: the
// quadratic surrogate tracks the exact divergence tightly only when the
// positive-difference letters carry about half of the total mass.
std::optional<std::pair<Distribution, Distribution>> balanced_pair(
    std::mt19937_64& gen, Eigen::Index m) {
  Eigen::RowVectorXd base(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    base(j) = 0.1 + 0.9 * uniform01(gen);
  }
  base /= base.sum();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return base(a) > base(b); });
  std::vector<bool> plus(static_cast<std::size_t>(m), false);
  double mass = 0.0;
  Eigen::Index n_plus = 0;
  for (Eigen::Index idx : order) {
    if (mass > 0.5) break;
    plus[static_cast<std::size_t>(idx)] = true;
    mass += base(idx);
    ++n_plus;
  }
  if (mass < 0.40 || mass > 0.60) return std::nullopt;
  if (n_plus == 0 || n_plus == m) return std::nullopt;
  const double shift = 0.04;
  Eigen::RowVectorXd moved = base;
  for (Eigen::Index j = 0; j < m; ++j) {
    moved(j) += plus[static_cast<std::size_t>(j)]
                    ? shift / static_cast<double>(n_plus)
                    : -shift / static_cast<double>(m - n_plus);
  }
  if (moved.minCoeff() < 0.01) return std::nullopt;
  return std::make_pair(Distribution::validated(moved, kFeasibilityTol),
                        Distribution::validated(base, kFeasibilityTol));
}

TEST_SUITE("eit") {

TEST_CASE("worked example at half a bit") {
  const Distribution p1 =
      Distribution::validated(Eigen::RowVector3d(0.5, 0.3, 0.2));
  const Distribution p2 =
      Distribution::validated(Eigen::RowVector3d(0.2, 0.3, 0.5));
  const LeakageBudget budget = LeakageBudget::from_bits(0.5);
  const double c = std::exp2(0.5) - 1.0;

  CHECK(std::abs(eit_optimal_value(p1, p2, budget) - 0.0745584412271571) <=
        1e-15);

  PutSolution solution = solve_eit(p1, p2, budget);
  CHECK_EQ(solution.method, SolveMethod::kEitHighPrivacy);
  CHECK(std::abs(solution.utility_bits - 0.0745584412271571) <= 1e-15);
  REQUIRE(solution.provenance.surrogate_value.has_value());
  CHECK_EQ(*solution.provenance.surrogate_value, solution.utility_bits);
  CHECK(std::abs(solution.provenance.exact_utility_bits -
                 0.133346983011278) <= 1e-14);

  Eigen::MatrixXd expected(3, 3);
  expected << c, 0, 1 - c, 0, c, 1 - c, 0, c, 1 - c;
  CHECK((solution.mechanism.rows() - expected).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(std::abs(solution.leakage_bits - 0.5) <= 1e-12);
  solution.validate(p1, p2);
}

TEST_CASE("sign partition splits by difference") {
  const Distribution p1 =
      Distribution::validated(Eigen::RowVector3d(0.5, 0.3, 0.2));
  const Distribution p2 =
      Distribution::validated(Eigen::RowVector3d(0.2, 0.3, 0.5));
  SignPartition partition = sign_partition(p1, p2);
  REQUIRE_EQ(partition.i_plus.size(), 1);
  CHECK_EQ(partition.i_plus[0], 0);
  // Zero-difference letters land on the minus side.
  REQUIRE_EQ(partition.i_minus.size(), 2);
  CHECK_EQ(partition.i_minus[0], 1);
  CHECK_EQ(partition.i_minus[1], 2);
  CHECK_THROWS_AS(sign_partition(p1, p1), Error);
}

TEST_CASE("surrogate matches the closed-form optimum") {
  std::mt19937_64 gen(stream_seed(401, 0));
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index m = 3 + static_cast<Eigen::Index>(uniform01(gen) * 4);
    auto [p1, p2] = random_pair(gen, m);
    const double l = 0.05 + 0.9 * uniform01(gen);
    const LeakageBudget budget = LeakageBudget::from_bits(l);
    PutSolution solution = solve_eit(p1, p2, budget);
    const double expected =
        (std::exp2(l) - 1.0) / 2.0 *
        std::pow((p1.probs() - p2.probs()).cwiseAbs().sum(), 2);
    CHECK(std::abs(solution.utility_bits - expected) <= 1e-12);
    CHECK(std::abs(eit_objective(p1, p2, solution.mechanism,
                                 eit_anchor(p1, p2, budget)) -
                   eit_optimal_value(p1, p2, budget)) <= 1e-12);
    CHECK(std::abs(solution.leakage_bits - l) <= 1e-12);
    solution.validate(p1, p2);
  }
}

TEST_CASE("mechanism carries two unique rows with disjoint supports") {
  std::mt19937_64 gen(stream_seed(401, 1));
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index m = 3 + static_cast<Eigen::Index>(uniform01(gen) * 4);
    auto [p1, p2] = random_pair(gen, m);
    const double l = 0.05 + 0.9 * uniform01(gen);
    PutSolution solution = solve_eit(p1, p2, LeakageBudget::from_bits(l));
    const Eigen::MatrixXd& w = solution.mechanism.rows();
    SignPartition partition = sign_partition(p1, p2);

    // Row pattern: i_plus rows put 2^l - 1 on letter 0, i_minus rows put it
    // on letter 1, and everyone splits the remainder over the rest.
    const double c = std::exp2(l) - 1.0;
    for (Eigen::Index i : partition.i_plus) {
      CHECK_EQ(w(i, 0), c);
      CHECK_EQ(w(i, 1), 0.0);
    }
    for (Eigen::Index i : partition.i_minus) {
      CHECK_EQ(w(i, 0), 0.0);
      CHECK_EQ(w(i, 1), c);
    }
    // Exactly two distinct rows.
    std::vector<Eigen::RowVectorXd> unique_rows;
    for (Eigen::Index i = 0; i < m; ++i) {
      bool seen = false;
      for (const Eigen::RowVectorXd& row : unique_rows) {
        seen = seen || (w.row(i) - row).cwiseAbs().maxCoeff() == 0.0;
      }
      if (!seen) unique_rows.push_back(w.row(i));
    }
    CHECK_EQ(unique_rows.size(), 2);
    ReferenceRow anchor = two_row_anchor(solution.mechanism);
    ReferenceRow closed = eit_anchor(p1, p2, LeakageBudget::from_bits(l));
    CHECK((anchor.w0.probs() - closed.w0.probs()).cwiseAbs().maxCoeff() <=
          1e-15);
  }
}

TEST_CASE("full one-bit budget reveals a singleton") {
  const Distribution p1 =
      Distribution::validated(Eigen::RowVector3d(0.5, 0.3, 0.2));
  const Distribution p2 =
      Distribution::validated(Eigen::RowVector3d(0.2, 0.3, 0.5));
  PutSolution solution = solve_eit(p1, p2, LeakageBudget::from_bits(1.0));
  const Eigen::MatrixXd& w = solution.mechanism.rows();
  // c = 1: the remaining column is dead and both rows are deterministic.
  CHECK_EQ(w.col(2).cwiseAbs().maxCoeff(), 0.0);
  CHECK_EQ(w(0, 0), 1.0);
  CHECK_EQ(w(1, 1), 1.0);
  CHECK_EQ(w(2, 1), 1.0);
  CHECK(std::abs(maximal_leakage(solution.mechanism) - 1.0) <= 1e-12);
}

TEST_CASE("zero budget collapses to a rank-one mechanism") {
  std::mt19937_64 gen(stream_seed(401, 2));
  for (Eigen::Index m : {3, 4, 6}) {
    auto [p1, p2] = random_pair(gen, m);
    PutSolution solution = solve_eit(p1, p2, LeakageBudget::from_bits(0.0));
    CHECK_EQ(solution.utility_bits, 0.0);
    CHECK(is_rank_one(solution.mechanism, 1e-12));
    CHECK(maximal_leakage(solution.mechanism) <= 1e-12);
  }
}

TEST_CASE("exact divergence is a feasible lower bound") {
  std::mt19937_64 gen(stream_seed(401, 3));
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index m = 3 + static_cast<Eigen::Index>(uniform01(gen) * 4);
    auto [p1, p2] = random_pair(gen, m);
    const double l = 0.05 + 0.9 * uniform01(gen);
    const LeakageBudget budget = LeakageBudget::from_bits(l);
    PutSolution solution = solve_eit(p1, p2, budget);
    CHECK(is_feasible(solution.mechanism, budget));
    CHECK(solution.provenance.exact_utility_bits >= 0.0);
    CHECK(solution.provenance.exact_utility_bits <=
          kl_divergence(p1, p2) + 1e-12);
  }
}

TEST_CASE("surrogate gap shrinks with the budget") {
  std::mt19937_64 gen(stream_seed(401, 4));
  constexpr double kLn2 = 0.6931471805599453;
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index m = 3 + static_cast<Eigen::Index>(uniform01(gen) * 4);
    auto [p1, p2] = random_pair(gen, m);
    double previous_gap = std::numeric_limits<double>::infinity();
    for (double l : {0.1, 0.05, 0.025}) {
      PutSolution solution = solve_eit(p1, p2, LeakageBudget::from_bits(l));
      // The quadratic surrogate approximates the divergence in nats.
      const double gap = std::abs(solution.utility_bits -
                                  solution.provenance.exact_utility_bits *
                                      kLn2);
      CHECK(gap <= previous_gap + 1e-12);
      previous_gap = gap;
    }
    ++checked;
  }
  CHECK_EQ(checked, 200);
}

TEST_CASE("surrogate is tight for mass-balanced pairs") {
  std::mt19937_64 gen(stream_seed(401, 5));
  const LeakageBudget budget = LeakageBudget::from_bits(0.05);
  constexpr double kLn2 = 0.6931471805599453;
  int checked = 0;
  for (int t = 0; t < 300 && checked < 100; ++t) {
    const Eigen::Index m = 3 + static_cast<Eigen::Index>(uniform01(gen) * 4);
    auto pair = balanced_pair(gen, m);
    if (!pair.has_value()) continue;
    PutSolution solution = solve_eit(pair->first, pair->second, budget);
    // Surrogate in nats versus the exact divergence in nats.
    const double exact_nats =
        solution.provenance.exact_utility_bits * kLn2;
    const double ratio = std::abs(solution.utility_bits - exact_nats) /
                         std::max(exact_nats, 1e-9);
    CHECK(ratio <= 0.15);
    ++checked;
  }
  CHECK(checked >= 100);
}

TEST_CASE("objective ignores dead output letters") {
  const Distribution p1 =
      Distribution::validated(Eigen::RowVector3d(0.5, 0.3, 0.2));
  const Distribution p2 =
      Distribution::validated(Eigen::RowVector3d(0.2, 0.3, 0.5));
  const Mechanism identity =
      Mechanism::validated(Eigen::MatrixXd::Identity(3, 3));
  // Letter 1 has zero residual, so a zero reference mass there is fine.
  ReferenceRow anchor = ReferenceRow::validated(
      Distribution::nonnegative(Eigen::RowVector3d(0.5, 0.0, 0.5)));
  CHECK(std::abs(eit_objective(p1, p2, identity, anchor) - 0.18) <= 1e-15);
  // Letter 2 has residual -0.3; zero reference mass there is rejected.
  ReferenceRow bad = ReferenceRow::validated(
      Distribution::nonnegative(Eigen::RowVector3d(0.5, 0.5, 0.0)));
  CHECK_THROWS_AS(eit_objective(p1, p2, identity, bad), Error);
}

TEST_CASE("input validation") {
  const Distribution p1 =
      Distribution::validated(Eigen::RowVector2d(0.3, 0.7));
  const Distribution p2 =
      Distribution::validated(Eigen::RowVector2d(0.7, 0.3));
  try {
    solve_eit(p1, p2, LeakageBudget::from_bits(0.5));
    CHECK(false);
  } catch (const Error& error) {
    CHECK_EQ(error.code(), Errc::kAlphabetTooSmall);
  }
  const Distribution q =
      Distribution::validated(Eigen::RowVector3d(0.2, 0.3, 0.5));
  try {
    solve_eit(q, q, LeakageBudget::from_bits(0.5));
    CHECK(false);
  } catch (const Error& error) {
    CHECK_EQ(error.code(), Errc::kDegenerateHypotheses);
  }
}

TEST_CASE("reference row bounds") {
  Distribution w0 =
      Distribution::validated(Eigen::RowVector3d(0.4, 0.3, 0.3));
  CHECK_EQ(ReferenceRow::validated(w0, 0.2).delta, 0.2);
  CHECK_THROWS_AS(ReferenceRow::validated(w0, -0.1), Error);
  CHECK_THROWS_AS(ReferenceRow::validated(w0, 0.34), Error);
}

TEST_CASE("two-row anchor rejects other shapes") {
  Eigen::MatrixXd three_rows(3, 3);
  three_rows << 1, 0, 0, 0, 1, 0, 0, 0, 1;
  CHECK_THROWS_AS(two_row_anchor(Mechanism::validated(three_rows)), Error);
  Eigen::MatrixXd one_row(3, 3);
  one_row.rowwise() = Eigen::RowVector3d(0.2, 0.3, 0.5);
  CHECK_THROWS_AS(two_row_anchor(Mechanism::validated(one_row)), Error);
  Eigen::MatrixXd two_rows(3, 3);
  two_rows << 0.5, 0.5, 0, 0.5, 0.5, 0, 0, 0.5, 0.5;
  ReferenceRow anchor = two_row_anchor(Mechanism::validated(two_rows));
  CHECK((anchor.w0.probs() - Eigen::RowVector3d(0.25, 0.5, 0.25))
            .cwiseAbs()
            .maxCoeff() <= 1e-15);
}

}  // TEST_SUITE

}  // namespace
}  // namespace maxleak
