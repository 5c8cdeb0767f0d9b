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

#ifndef MAXLEAK_SIMPLEX_H_
#define MAXLEAK_SIMPLEX_H_

#include <cstdint>

#include <Eigen/Dense>

namespace maxleak {

// Dense two-phase primal simplex for
//     maximize c'x  subject to  a_ub x <= b_ub,  a_eq x = b_eq,  x >= 0.
// Bland's rule picks every pivot, so the method cannot cycle.

struct SimplexOptions {
  double pivot_tol = 1e-9;
  // 0 means the default cap of 50 * (variables + rows).
  std::int64_t max_iterations = 0;
};

enum class SimplexStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kIterationLimit,
};

struct SimplexResult {
  SimplexStatus status = SimplexStatus::kOptimal;
  Eigen::VectorXd x;
  double objective = 0.0;
  std::int64_t iterations = 0;
};

SimplexResult simplex_maximize(const Eigen::VectorXd& c,
                               const Eigen::MatrixXd& a_ub,
                               const Eigen::VectorXd& b_ub,
                               const Eigen::MatrixXd& a_eq,
                               const Eigen::VectorXd& b_eq,
                               const SimplexOptions& options = {});

}  // namespace maxleak

#endif  // MAXLEAK_SIMPLEX_H_
