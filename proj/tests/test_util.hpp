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

#ifndef MAXLEAK_TESTS_TEST_UTIL_H_
#define MAXLEAK_TESTS_TEST_UTIL_H_

#include <random>
#include <utility>

#include <Eigen/Dense>

#include "maxleak/rng.hpp"
#include "maxleak/types.hpp"

namespace maxleak {
namespace testing {

// Random strictly-positive distribution; entries at least floor_mass before
// normalization, so post-normalization masses stay well away from zero.
inline Distribution random_distribution(std::mt19937_64& gen, Eigen::Index m,
                                        double floor_mass = 0.05) {
  Eigen::RowVectorXd v(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    v(i) = floor_mass + (1.0 - floor_mass) * uniform01(gen);
  }
  v /= v.sum();
  return Distribution::validated(std::move(v), kFeasibilityTol);
}

// Random row-stochastic matrix with strictly positive entries.
inline Mechanism random_mechanism(std::mt19937_64& gen, Eigen::Index m) {
  Eigen::MatrixXd rows(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      rows(i, j) = 1e-3 + uniform01(gen);
      sum += rows(i, j);
    }
    rows.row(i) /= sum;
  }
  return Mechanism::validated(std::move(rows), kFeasibilityTol);
}

// Random pair of distinct strictly-positive distributions.
inline std::pair<Distribution, Distribution> random_pair(
    std::mt19937_64& gen, Eigen::Index m) {
  Distribution p1 = random_distribution(gen, m);
  Distribution p2 = random_distribution(gen, m);
  while ((p1.probs() - p2.probs()).cwiseAbs().maxCoeff() < 1e-6) {
    p2 = random_distribution(gen, m);
  }
  return {std::move(p1), std::move(p2)};
}

}  // namespace testing
}  // namespace maxleak

#endif  // MAXLEAK_TESTS_TEST_UTIL_H_
