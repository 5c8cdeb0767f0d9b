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

#ifndef MAXLEAK_BINARY_H_
#define MAXLEAK_BINARY_H_

#include <vector>

#include "maxleak/types.hpp"

namespace maxleak {

// Closed-form solver for binary alphabets.
//
// A Bernoulli parameter p in (0, 1) stands for the distribution (1-p, p):
// p is the mass of the second letter.  Binary mechanisms are parametrized
// by their off-diagonal entries,
//     w(rho1, rho2) = [[1-rho1, rho1], [rho2, 1-rho2]],
// and a budget of l bits admits exactly the (rho1, rho2) in [0,1]^2 with
// 2 - 2^l <= rho1 + rho2 <= 2^l.

struct BinaryParams {
  double p1 = 0.0;
  double p2 = 0.0;
  double l = 0.0;

  // Requires p1, p2 in (0, 1) with p1 != p2 and l in [0, 1].  Values of l
  // within 1e-12 above 1 are clamped to 1; larger values are rejected.
  static BinaryParams validated(double p1, double p2, double l);
};

// The distribution (1-p, p).
Distribution bernoulli(double p);

// The binary mechanism [[1-rho1, rho1], [rho2, 1-rho2]].
Mechanism binary_mechanism(double rho1, double rho2);

// Utilities of the two budget-tight candidate mechanisms.  f1 is achieved at
// (rho1, rho2) = (2^l - 1, 1) and f2 at (1, 2^l - 1); the optimal utility is
// max(f1, f2).  Both vanish at l = 0 and collapse to the divergence between
// the sources at l = 1.
double f1(const BinaryParams& params);
double f2(const BinaryParams& params);

// Exact optimum for binary alphabets.  Returns the f1-branch mechanism
// [[2-2^l, 2^l-1], [1, 0]] when f1 >= f2 and [[0, 1], [2^l-1, 2-2^l]]
// otherwise; on a tie both candidates are recorded in the provenance.
PutSolution solve_binary(const BinaryParams& params);

// The six corner points of the feasible (rho1, rho2) region, ordered as:
//   0: (2^l-1, 1)    1: (1, 2^l-1)    2: (0, 2-2^l)
//   3: (2-2^l, 0)    4: (1, 0)        5: (0, 1)
// Corners 0/3 and 1/2 are column permutations of each other; corners 4 and 5
// are rank-one and carry no utility.  At l = 0 and l = 1 some corners
// coincide.
std::vector<Mechanism> binary_vertices(double l);

}  // namespace maxleak

#endif  // MAXLEAK_BINARY_H_
