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

#ifndef MAXLEAK_DIVERGENCE_H_
#define MAXLEAK_DIVERGENCE_H_

#include <cmath>

#include <Eigen/Dense>

#include "maxleak/types.hpp"

namespace maxleak {

// Kullback-Leibler divergence sum_i p_i log2(p_i / q_i) with the convention
// 0 log 0 = 0.  Requires q strictly positive and p nonnegative; p and q need
// not be normalized (callers differentiating the formula rely on that).
template <typename DerivedP, typename DerivedQ>
double kl_divergence(const Eigen::MatrixBase<DerivedP>& p,
                     const Eigen::MatrixBase<DerivedQ>& q) {
  if (p.size() != q.size()) {
    throw Error(Errc::kDimensionMismatch,
                "kl_divergence: p has " + std::to_string(p.size()) +
                    " entries, q has " + std::to_string(q.size()));
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double pi = p(i);
    const double qi = q(i);
    if (qi <= 0.0) {
      throw Error(Errc::kNonPositiveSupport,
                  "kl_divergence: q entry " + std::to_string(i + 1) +
                      " is not strictly positive");
    }
    if (pi < 0.0) {
      throw Error(Errc::kNonPositiveSupport,
                  "kl_divergence: p entry " + std::to_string(i + 1) +
                      " is negative");
    }
    if (pi > 0.0) {
      sum += pi * std::log2(pi / qi);
    }
  }
  return sum;
}

// KL divergence between vectors that may share zero coordinates: letters
// with a_i = 0 contribute nothing, and b_i = 0 is only legal when a_i = 0.
template <typename DerivedA, typename DerivedB>
double kl_divergence_shared_support(const Eigen::MatrixBase<DerivedA>& a,
                                    const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) {
    throw Error(Errc::kDimensionMismatch,
                "kl_divergence_shared_support: size mismatch");
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double ai = a(i);
    const double bi = b(i);
    if (ai < 0.0) {
      throw Error(Errc::kNonPositiveSupport,
                  "kl_divergence_shared_support: entry " +
                      std::to_string(i + 1) + " of the first argument is "
                      "negative");
    }
    if (ai == 0.0) continue;
    if (bi <= 0.0) {
      throw Error(Errc::kNonPositiveSupport,
                  "kl_divergence_shared_support: letter " +
                      std::to_string(i + 1) +
                      " has positive mass under the first argument only");
    }
    sum += ai * std::log2(ai / bi);
  }
  return sum;
}

inline double kl_divergence(const Distribution& p, const Distribution& q) {
  return kl_divergence(p.probs(), q.probs());
}

// Output distribution of a mechanism: the row vector p * w.
template <typename DerivedP, typename DerivedW>
Eigen::RowVectorXd pushforward(const Eigen::MatrixBase<DerivedP>& p,
                               const Eigen::MatrixBase<DerivedW>& w) {
  if (p.size() != w.rows()) {
    throw Error(Errc::kDimensionMismatch,
                "pushforward: distribution has " + std::to_string(p.size()) +
                    " entries, mechanism has " + std::to_string(w.rows()) +
                    " rows");
  }
  return p * w;
}

Distribution pushforward(const Distribution& p, const Mechanism& w);

// Type-II error exponent of the test between the two hypotheses observed
// through w: D(p1 w || p2 w).  Output letters dropped by the mechanism have
// zero mass under both pushforwards and contribute nothing.
template <typename DerivedP1, typename DerivedP2, typename DerivedW>
double utility(const Eigen::MatrixBase<DerivedP1>& p1,
               const Eigen::MatrixBase<DerivedP2>& p2,
               const Eigen::MatrixBase<DerivedW>& w) {
  const Eigen::RowVectorXd a = pushforward(p1, w);
  const Eigen::RowVectorXd b = pushforward(p2, w);
  return kl_divergence_shared_support(a, b);
}

double utility(const Distribution& p1, const Distribution& p2,
               const Mechanism& w);

}  // namespace maxleak

#endif  // MAXLEAK_DIVERGENCE_H_
