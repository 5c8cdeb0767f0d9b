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

#include "maxleak/leakage.hpp"

#include <cmath>

namespace maxleak {

bool is_rank_one(const Mechanism& w, double tol) {
  const Eigen::MatrixXd& m = w.rows();
  // Row-stochastic matrices are rank one iff every row equals the first.
  return (m.rowwise() - m.row(0)).cwiseAbs().maxCoeff() <= tol;
}

bool is_permutation_matrix(const Mechanism& w, double tol) {
  const Eigen::MatrixXd& m = w.rows();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (std::abs(m.col(j).sum() - 1.0) > tol) return false;
    if (m.col(j).maxCoeff() < 1.0 - tol) return false;
  }
  return true;
}

}  // namespace maxleak
