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

#ifndef MAXLEAK_LEAKAGE_H_
#define MAXLEAK_LEAKAGE_H_

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "maxleak/types.hpp"

namespace maxleak {

// Maximal leakage of a row-stochastic matrix in bits:
// log2(sum_j max_i w_ij).  The column-max sum of a row-stochastic matrix is
// at least 1 up to rounding, so tiny negative results are clamped to zero.
template <typename Derived>
double maximal_leakage(const Eigen::MatrixBase<Derived>& w) {
  const double colmax_sum = w.colwise().maxCoeff().sum();
  if (colmax_sum <= 0.0) {
    throw Error(Errc::kInvalidMechanism,
                "maximal_leakage: column-max sum is not positive");
  }
  return std::max(0.0, std::log2(colmax_sum));
}

inline double maximal_leakage(const Mechanism& w) {
  return maximal_leakage(w.rows());
}

// True when all rows agree within tol, i.e. the mechanism ignores its input
// and leaks nothing.
bool is_rank_one(const Mechanism& w, double tol = kFeasibilityTol);

// True when the mechanism is a permutation matrix within tol, i.e. the input
// is fully revealed and leakage is log2(M).
bool is_permutation_matrix(const Mechanism& w, double tol = kFeasibilityTol);

}  // namespace maxleak

#endif  // MAXLEAK_LEAKAGE_H_
