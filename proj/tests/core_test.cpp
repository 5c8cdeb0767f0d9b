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

#include "maxleak/divergence.hpp"
#include "maxleak/leakage.hpp"
#include "maxleak/rng.hpp"
#include "maxleak/types.hpp"
#include "test_util.hpp"

namespace maxleak {
namespace {

using testing::random_distribution;
using testing::random_mechanism;
using testing::random_pair;

Distribution dist2(double a, double b) {
  return Distribution::validated(Eigen::RowVector2d(a, b));
}

TEST_SUITE("core") {

TEST_CASE("kl_divergence known values") {
  CHECK_EQ(kl_divergence(dist2(0.5, 0.5), dist2(0.5, 0.5)), 0.0);
  // 0.5*log2(2) + 0.5*log2(2/3) = 1 - 0.5*log2(3).
  const double expected = 1.0 - 0.5 * std::log2(3.0);
  CHECK(std::abs(kl_divergence(dist2(0.5, 0.5), dist2(0.25, 0.75)) -
                 expected) <= 1e-15);
  CHECK_EQ(expected, doctest::Approx(0.2075).epsilon(1e-3));
  // Deterministic vs uniform: exactly one bit.
  Eigen::RowVector2d deterministic(1.0, 0.0);
  CHECK_EQ(kl_divergence(deterministic, Eigen::RowVector2d(0.5, 0.5)), 1.0);
}

TEST_CASE("kl_divergence rejects bad supports") {
  Eigen::RowVector2d p(0.5, 0.5);
  Eigen::RowVector3d longer(0.2, 0.3, 0.5);
  CHECK_THROWS_AS((void)kl_divergence(p, longer), Error);
  Eigen::RowVector2d zero_q(1.0, 0.0);
  CHECK_THROWS_AS((void)kl_divergence(p, zero_q), Error);
}

TEST_CASE("kl_divergence zero iff equal") {
  std::mt19937_64 gen(stream_seed(101, 0));
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index m = 2 + static_cast<Eigen::Index>(uniform01(gen) * 5);
    auto [p, q] = random_pair(gen, m);
    CHECK(kl_divergence(p, q) > 0.0);
    CHECK_EQ(kl_divergence(p, p), 0.0);
  }
}

TEST_CASE("pushforward examples") {
  Distribution p = dist2(0.3, 0.7);
  Mechanism identity = Mechanism::validated(Eigen::Matrix2d::Identity());
  CHECK_EQ((pushforward(p, identity).probs() - p.probs()).cwiseAbs().maxCoeff(),
           0.0);

  Eigen::Matrix2d rank1;
  rank1 << 0.5, 0.5, 0.5, 0.5;
  Distribution out = pushforward(p, Mechanism::validated(rank1));
  CHECK_EQ(out.probs()(0), 0.5);
  CHECK_EQ(out.probs()(1), 0.5);

  Eigen::Matrix2d swap;
  swap << 0.0, 1.0, 1.0, 0.0;
  Distribution swapped = pushforward(p, Mechanism::validated(swap));
  CHECK_EQ(swapped.probs()(0), 0.7);
  CHECK_EQ(swapped.probs()(1), 0.3);
}

TEST_CASE("utility identity and rank-1 cases") {
  std::mt19937_64 gen(stream_seed(101, 1));
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index m = 2 + static_cast<Eigen::Index>(uniform01(gen) * 5);
    auto [p1, p2] = random_pair(gen, m);
    Mechanism identity =
        Mechanism::validated(Eigen::MatrixXd::Identity(m, m));
    CHECK_EQ(utility(p1, p2, identity), kl_divergence(p1, p2));

    Distribution w0 = random_distribution(gen, m);
    Eigen::MatrixXd rows(m, m);
    rows.rowwise() = w0.probs();
    // Both pushforwards are w0 up to dot-product roundoff.
    CHECK(std::abs(utility(p1, p2, Mechanism::validated(rows))) <= 1e-12);
  }
}

TEST_CASE("utility worked example") {
  Distribution p1 = dist2(0.3, 0.7);
  Distribution p2 = dist2(0.7, 0.3);
  Eigen::Matrix2d w;
  w << 1.0, 0.0, 0.5, 0.5;
  // Pushforwards: (0.65, 0.35) and (0.85, 0.15).
  const double by_hand = 0.65 * std::log2(0.65 / 0.85) +
                         0.35 * std::log2(0.35 / 0.15);
  CHECK(std::abs(utility(p1, p2, Mechanism::validated(w)) - by_hand) <=
        1e-15);
}

TEST_CASE("data-processing inequality on random instances") {
  std::mt19937_64 gen(stream_seed(101, 2));
  for (int t = 0; t < 300; ++t) {
    const Eigen::Index m = 2 + static_cast<Eigen::Index>(uniform01(gen) * 5);
    auto [p1, p2] = random_pair(gen, m);
    Mechanism w = random_mechanism(gen, m);
    const double u = utility(p1, p2, w);
    CHECK(u >= 0.0);
    CHECK(u <= kl_divergence(p1, p2) + 1e-12);
  }
}

TEST_CASE("column permutation preserves utility and leakage") {
  std::mt19937_64 gen(stream_seed(101, 3));
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index m = 2 + static_cast<Eigen::Index>(uniform01(gen) * 5);
    auto [p1, p2] = random_pair(gen, m);
    Mechanism w = random_mechanism(gen, m);
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    Mechanism permuted = permute_columns(w, perm);
    CHECK(std::abs(utility(p1, p2, w) - utility(p1, p2, permuted)) <= 1e-12);
    CHECK(std::abs(maximal_leakage(w) - maximal_leakage(permuted)) <= 1e-12);
  }
}

TEST_CASE("zero-column blending keeps utility constant") {
  std::mt19937_64 gen(stream_seed(101, 4));
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index m = 3 + static_cast<Eigen::Index>(uniform01(gen) * 3);
    auto [p1, p2] = random_pair(gen, m);
    // Random mechanism with column j zeroed out (mass folded into column k).
    Mechanism base = random_mechanism(gen, m);
    const Eigen::Index j = static_cast<Eigen::Index>(uniform01(gen) * m);
    const Eigen::Index k = (j + 1) % m;
    Eigen::MatrixXd rows = base.rows();
    rows.col(k) += rows.col(j);
    rows.col(j).setZero();
    Mechanism w = Mechanism::validated(rows, kFeasibilityTol);
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[static_cast<std::size_t>(j)],
              perm[static_cast<std::size_t>(k)]);
    Mechanism swapped = permute_columns(w, perm);
    const double reference = utility(p1, p2, w);
    for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      Eigen::MatrixXd blend =
          lambda * w.rows() + (1.0 - lambda) * swapped.rows();
      const double blended =
          utility(p1, p2, Mechanism::validated(blend, kFeasibilityTol));
      CHECK(std::abs(blended - reference) <= 1e-12);
    }
  }
}

TEST_CASE("permute_columns validates the permutation") {
  Mechanism w = Mechanism::validated(Eigen::Matrix2d::Identity());
  CHECK_THROWS_AS((void)permute_columns(w, {0, 0}), Error);
  CHECK_THROWS_AS((void)permute_columns(w, {0}), Error);
  CHECK_THROWS_AS((void)permute_columns(w, {0, 2}), Error);
  Eigen::Matrix2d m;
  m << 0.7, 0.3, 0.2, 0.8;
  Mechanism swapped = permute_columns(Mechanism::validated(m), {1, 0});
  CHECK_EQ(swapped.rows()(0, 0), 0.3);
  CHECK_EQ(swapped.rows()(0, 1), 0.7);
  CHECK_EQ(swapped.rows()(1, 0), 0.8);
  CHECK_EQ(swapped.rows()(1, 1), 0.2);
}

TEST_CASE("is_feasible follows the budget") {
  Mechanism identity4 =
      Mechanism::validated(Eigen::MatrixXd::Identity(4, 4));
  CHECK_FALSE(is_feasible(identity4, LeakageBudget::from_bits(1.0)));
  CHECK(is_feasible(identity4, LeakageBudget::from_bits(2.0)));

  Eigen::MatrixXd w1(4, 4);
  w1 << 1, 0, 0, 0, 0, 0.3, 0.3, 0.4, 0, 0.3, 0.3, 0.4, 0, 0.3, 0.3, 0.4;
  CHECK(is_feasible(Mechanism::validated(w1), LeakageBudget::from_bits(1.0)));

  Eigen::MatrixXd rank1(3, 3);
  rank1.rowwise() = Eigen::RowVector3d(0.2, 0.3, 0.5);
  CHECK(is_feasible(Mechanism::validated(rank1),
                    LeakageBudget::from_bits(0.0)));
}

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS((void)Distribution::validated(Eigen::RowVector2d(0.6, 0.6)),
                  Error);
  CHECK_THROWS_AS((void)Distribution::validated(Eigen::RowVector2d(1.0, 0.0)),
                  Error);
  Eigen::RowVectorXd one(1);
  one << 1.0;
  CHECK_THROWS_AS((void)Distribution::validated(one), Error);
  CHECK_NOTHROW((void)Distribution::nonnegative(Eigen::RowVector2d(1.0, 0.0)));
}

TEST_CASE("mechanism validation diagnostics") {
  Eigen::Matrix2d bad;
  bad << 0.5, 0.47, 0.2, 0.8;
  try {
    (void)Mechanism::validated(bad);
    CHECK(false);
  } catch (const Error& e) {
    CHECK_EQ(e.code(), Errc::kInvalidMechanism);
    CHECK(std::string(e.what()).find("row 1 sums to 0.97") !=
          std::string::npos);
  }
  Eigen::Matrix2d negative;
  negative << 1.2, -0.2, 0.5, 0.5;
  CHECK_THROWS_AS((void)Mechanism::validated(negative), Error);
}

TEST_CASE("budget construction and clamping") {
  CHECK_EQ(LeakageBudget::from_bits(0.5).linear(), std::exp2(0.5));
  CHECK_EQ(LeakageBudget::from_bits(-1e-13).bits(), 0.0);
  CHECK_THROWS_AS((void)LeakageBudget::from_bits(-0.1), Error);
  // Slightly above the cap clamps; far above rejects.
  CHECK_EQ(LeakageBudget::from_bits(1.0 + 1e-10).clamped_for_alphabet(2).bits(),
           1.0);
  CHECK_THROWS_AS(
      (void)LeakageBudget::from_bits(1.5).clamped_for_alphabet(2), Error);
}

TEST_CASE("tradeoff curve validation") {
  Distribution p1 = dist2(0.3, 0.7);
  Distribution p2 = dist2(0.7, 0.3);
  Mechanism identity = Mechanism::validated(Eigen::Matrix2d::Identity());
  PutSolution point{
      .mechanism = identity,
      .utility_bits = kl_divergence(p1, p2),
      .leakage_bits = 1.0,
      .method = SolveMethod::kBinaryExact,
      .provenance = {},
  };
  TradeoffCurve curve;
  curve.points.push_back({LeakageBudget::from_bits(1.0), point});
  curve.points.push_back({LeakageBudget::from_bits(0.5), point});
  CHECK_THROWS_AS(curve.validate(), Error);
}

}  // TEST_SUITE

}  // namespace
}  // namespace maxleak
