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
#include <random>
#include <vector>

#include <doctest.h>

#include "maxleak/leakage.hpp"
#include "maxleak/rng.hpp"
#include "maxleak/types.hpp"
#include "test_util.hpp"

namespace maxleak {
namespace {

using testing::random_distribution;
using testing::random_mechanism;

Mechanism permutation_mechanism(std::mt19937_64& gen, Eigen::Index m) {
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), gen);
  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    rows(i, perm[static_cast<std::size_t>(i)]) = 1.0;
  }
  return Mechanism::validated(std::move(rows));
}

TEST_SUITE("leakage") {

TEST_CASE("one-bit reference mechanisms") {
  Eigen::MatrixXd w1(4, 4);
  w1 << 1, 0, 0, 0, 0, 0.3, 0.3, 0.4, 0, 0.3, 0.3, 0.4, 0, 0.3, 0.3, 0.4;
  Eigen::MatrixXd w2(4, 4);
  w2 << 0.5, 0.5, 0, 0, 0.5, 0.5, 0, 0, 0, 0, 0.5, 0.5, 0, 0, 0.5, 0.5;
  CHECK(std::abs(maximal_leakage(Mechanism::validated(w1)) - 1.0) <= 1e-12);
  CHECK(std::abs(maximal_leakage(Mechanism::validated(w2)) - 1.0) <= 1e-12);
  // The first mechanism reveals letter 1 exactly; neither is rank-1.
  CHECK_FALSE(is_rank_one(Mechanism::validated(w1), kFeasibilityTol));
  CHECK_FALSE(is_rank_one(Mechanism::validated(w2), kFeasibilityTol));
}

TEST_CASE("identity reaches the cap") {
  for (Eigen::Index m : {2, 3, 4, 8}) {
    Mechanism identity = Mechanism::validated(Eigen::MatrixXd::Identity(m, m));
    CHECK_EQ(maximal_leakage(identity), std::log2(static_cast<double>(m)));
    CHECK(is_permutation_matrix(identity, kFeasibilityTol));
  }
}

TEST_CASE("range and biconditionals on random matrices") {
  std::mt19937_64 gen(stream_seed(202, 0));
  for (Eigen::Index m : {2, 3, 4, 8}) {
    const double cap = std::log2(static_cast<double>(m));
    for (int t = 0; t < 250; ++t) {
      Mechanism w = random_mechanism(gen, m);
      const double leak = maximal_leakage(w);
      CHECK(leak >= 0.0);
      CHECK(leak <= cap + 1e-12);
      // Equivalences at tolerance 1e-9, both directions.
      CHECK_EQ(is_rank_one(w, 1e-12), leak <= 1e-9);
      CHECK_EQ(is_permutation_matrix(w, 1e-12), leak >= cap - 1e-9);
    }
  }
}

TEST_CASE("rank-1 mechanisms have zero leakage") {
  std::mt19937_64 gen(stream_seed(202, 1));
  for (Eigen::Index m : {2, 3, 4, 8}) {
    for (int t = 0; t < 50; ++t) {
      Distribution row = random_distribution(gen, m);
      Eigen::MatrixXd rows(m, m);
      rows.rowwise() = row.probs();
      Mechanism w = Mechanism::validated(rows, kFeasibilityTol);
      CHECK(maximal_leakage(w) < 1e-12);
      CHECK(is_rank_one(w, 1e-12));
      CHECK_FALSE(is_permutation_matrix(w, 1e-9));
    }
  }
}

TEST_CASE("permutations sit exactly at the cap") {
  std::mt19937_64 gen(stream_seed(202, 2));
  for (Eigen::Index m : {2, 3, 4, 8}) {
    const double cap = std::log2(static_cast<double>(m));
    for (int t = 0; t < 50; ++t) {
      Mechanism w = permutation_mechanism(gen, m);
      CHECK_EQ(maximal_leakage(w), cap);
      CHECK(is_permutation_matrix(w, 1e-12));
      CHECK_FALSE(is_rank_one(w, 1e-9));
    }
  }
}

TEST_CASE("leakage is invariant under row and column permutation") {
  std::mt19937_64 gen(stream_seed(202, 3));
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index m = 2 + static_cast<Eigen::Index>(uniform01(gen) * 5);
    Mechanism w = random_mechanism(gen, m);
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    Mechanism cols = permute_columns(w, perm);
    Eigen::MatrixXd row_shuffled(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      row_shuffled.row(i) = w.rows().row(perm[static_cast<std::size_t>(i)]);
    }
    CHECK(std::abs(maximal_leakage(w) - maximal_leakage(cols)) <= 1e-12);
    CHECK_EQ(maximal_leakage(w),
             maximal_leakage(Mechanism::validated(row_shuffled)));
  }
}

TEST_CASE("near-tie columns stay within the equivalence tolerance") {
  // A mechanism within 1e-12 of rank-1 keeps leakage below 1e-9.
  Eigen::MatrixXd rows(3, 3);
  rows.rowwise() = Eigen::RowVector3d(0.2, 0.3, 0.5);
  rows(0, 0) += 5e-13;
  rows(0, 1) -= 5e-13;
  Mechanism w = Mechanism::validated(rows, kFeasibilityTol);
  CHECK(is_rank_one(w, 1e-11));
  CHECK(maximal_leakage(w) <= 1e-9);
}

}  // TEST_SUITE

}  // namespace
}  // namespace maxleak
