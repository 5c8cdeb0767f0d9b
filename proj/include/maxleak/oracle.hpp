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

#ifndef MAXLEAK_ORACLE_H_
#define MAXLEAK_ORACLE_H_

#include <cstdint>
#include <string>

#include "maxleak/types.hpp"

namespace maxleak {

// Reference searches and a hypothesis-testing simulation.  These are slow
// but independent of the closed-form solvers, so they pin down expected
// values and provide lower bounds where no closed form exists.  Results are
// deterministic for a fixed seed regardless of thread count.

enum class OracleMethod { kGrid, kVertexSample };

const char* to_string(OracleMethod method);

struct OracleReport {
  Mechanism best_mechanism;
  double best_utility = 0.0;
  std::int64_t evaluations = 0;
  OracleMethod method = OracleMethod::kGrid;
  // Every evaluation is an exact utility at a feasible point, so the best
  // value never exceeds the true optimum.
  bool is_lower_bound = true;
  std::string rng;
  std::uint64_t seed = 0;
};

// Exhaustive search for binary alphabets over a resolution x resolution grid
// of the off-diagonal coordinates (rho1, rho2).  Grid points within one cell
// of a budget boundary are additionally projected onto it along each axis,
// so the budget-tight corners are evaluated exactly.  p1 and p2 are
// Bernoulli parameters; resolution must be at least 100.
OracleReport grid_oracle_binary(double p1, double p2, double l,
                                std::int64_t resolution);

// Samples vertices of the budget polytope by maximizing random linear
// objectives (standard-normal coefficients on the mechanism entries) and
// keeps the vertex with the best exact utility.  Every polytope vertex is
// optimal for some objective, so with enough samples the best vertex is
// found with high probability; the reported value is always a lower bound.
OracleReport vertex_sample_oracle(const Distribution& p1,
                                  const Distribution& p2,
                                  const LeakageBudget& budget,
                                  std::int64_t samples, std::uint64_t seed);

struct SimulationReport {
  std::int64_t n = 0;
  std::int64_t trials = 0;
  double type1_rate = 0.0;
  // Importance-weighted estimate of the type-II error of the calibrated
  // test; exact even when the error is far below 1/trials.
  double type2_rate = 0.0;
  // Plain error count over the trials drawn under the second hypothesis;
  // zero whenever the true rate is below the Monte Carlo floor.
  double type2_rate_direct = 0.0;
  double empirical_exponent = 0.0;
  double theoretical_exponent = 0.0;
  std::string rng;
  std::uint64_t seed = 0;
};

// Monte Carlo check of the achievable type-II error exponent.  Draws
// `trials` blocks of n samples under each hypothesis's pushforward, applies
// the log-likelihood-ratio test with the threshold calibrated at the
// empirical (1 - alpha) quantile under the first hypothesis (randomizing on
// ties so the type-I rate does not exceed alpha), and reports the type-II
// rate and the exponent -log2(rate)/n.  The type-II rate is estimated by
// reweighting the first-hypothesis sample with the likelihood ratio, which
// stays informative when the rate is exponentially small.  Identical seeds
// give bit-identical reports.
SimulationReport simulate_test(const Distribution& p1, const Distribution& p2,
                               const Mechanism& w, std::int64_t n,
                               std::int64_t trials, double alpha,
                               std::uint64_t seed);

}  // namespace maxleak

#endif  // MAXLEAK_ORACLE_H_
