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

#include "maxleak/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "maxleak/binary.hpp"
#include "maxleak/divergence.hpp"
#include "maxleak/lp.hpp"
#include "maxleak/parallel.hpp"
#include "maxleak/rng.hpp"
#include "maxleak/simplex.hpp"

namespace maxleak {
namespace {

// Divergence between the binary pushforwards at off-diagonal coordinates
// (rho1, rho2).  On the feasible set the two output masses vanish only
// together, so skipped zero terms never hide an infinite divergence.
double binary_point_utility(double p1, double p2, double rho1, double rho2) {
  const double a = (1.0 - p1) * (1.0 - rho1) + p1 * rho2;
  const double b = (1.0 - p2) * (1.0 - rho1) + p2 * rho2;
  double sum = 0.0;
  if (a > 0.0 && b > 0.0) sum += a * std::log2(a / b);
  const double ac = 1.0 - a;
  const double bc = 1.0 - b;
  if (ac > 0.0 && bc > 0.0) sum += ac * std::log2(ac / bc);
  return sum;
}

struct GridBest {
  double value = -1.0;
  double rho1 = 0.0;
  double rho2 = 0.0;
  std::int64_t evaluations = 0;
};

// log2(sum_i 2^(terms_i)) computed against the running maximum.
double log_sum_exp2(const std::vector<double>& terms) {
  double peak = -std::numeric_limits<double>::infinity();
  for (const double t : terms) peak = std::max(peak, t);
  if (!std::isfinite(peak)) return peak;
  double sum = 0.0;
  for (const double t : terms) sum += std::exp2(t - peak);
  return peak + std::log2(sum);
}

}  // namespace

const char* to_string(OracleMethod method) {
  switch (method) {
    case OracleMethod::kGrid:
      return "Grid";
    case OracleMethod::kVertexSample:
      return "VertexSample";
  }
  return "Unknown";
}

OracleReport grid_oracle_binary(double p1, double p2, double l,
                                std::int64_t resolution) {
  const BinaryParams params = BinaryParams::validated(p1, p2, l);
  if (resolution < 100) {
    throw Error(Errc::kDomainError,
                "grid resolution " + std::to_string(resolution) +
                    " below minimum 100");
  }
  const double upper = std::exp2(params.l);
  const double lower = 2.0 - upper;
  const double step = 1.0 / static_cast<double>(resolution - 1);
  // The endpoints are pinned so corner projections are evaluated exactly.
  const auto grid_at = [&](std::int64_t i) {
    return i == resolution - 1 ? 1.0 : static_cast<double>(i) * step;
  };

  const std::int64_t chunk_count = std::min<std::int64_t>(resolution, 64);
  std::vector<GridBest> per_chunk(static_cast<std::size_t>(chunk_count));
  parallel_chunks(chunk_count, [&](std::int64_t chunk) {
    const std::int64_t lo = chunk * resolution / chunk_count;
    const std::int64_t hi = (chunk + 1) * resolution / chunk_count;
    GridBest best;
    for (std::int64_t i = lo; i < hi; ++i) {
      const double rho1 = grid_at(i);
      for (std::int64_t j = 0; j < resolution; ++j) {
        const double rho2 = grid_at(j);
        const double sum = rho1 + rho2;
        if (sum < lower || sum > upper) continue;
        const double value =
            binary_point_utility(params.p1, params.p2, rho1, rho2);
        ++best.evaluations;
        if (value > best.value) {
          best.value = value;
          best.rho1 = rho1;
          best.rho2 = rho2;
        }
      }
    }
    per_chunk[static_cast<std::size_t>(chunk)] = best;
  });

  GridBest best;
  for (const GridBest& candidate : per_chunk) {
    best.evaluations += candidate.evaluations;
    if (candidate.value > best.value) {
      best.value = candidate.value;
      best.rho1 = candidate.rho1;
      best.rho2 = candidate.rho2;
    }
  }

  // Projections of the grid lines onto the two budget boundaries.  The
  // companion coordinate of every belt vertex lies in {0, 1}, so the exact
  // corners are always among these points.
  const auto consider = [&](double rho1, double rho2) {
    if (rho1 < 0.0 || rho1 > 1.0 || rho2 < 0.0 || rho2 > 1.0) return;
    const double value =
        binary_point_utility(params.p1, params.p2, rho1, rho2);
    ++best.evaluations;
    if (value > best.value) {
      best.value = value;
      best.rho1 = rho1;
      best.rho2 = rho2;
    }
  };
  for (const double boundary : {lower, upper}) {
    for (std::int64_t i = 0; i < resolution; ++i) {
      const double grid = grid_at(i);
      consider(grid, boundary - grid);
      consider(boundary - grid, grid);
    }
  }

  return OracleReport{
      .best_mechanism = binary_mechanism(best.rho1, best.rho2),
      .best_utility = best.value,
      .evaluations = best.evaluations,
      .method = OracleMethod::kGrid,
      .is_lower_bound = true,
      .rng = "",
      .seed = 0,
  };
}

OracleReport vertex_sample_oracle(const Distribution& p1,
                                  const Distribution& p2,
                                  const LeakageBudget& budget,
                                  std::int64_t samples, std::uint64_t seed) {
  if (p1.size() != p2.size()) {
    throw Error(Errc::kDimensionMismatch,
                "hypotheses have " + std::to_string(p1.size()) + " and " +
                    std::to_string(p2.size()) + " letters");
  }
  if (samples < 1) {
    throw Error(Errc::kDomainError, "sample count must be positive");
  }
  const Eigen::Index m = p1.size();
  const LeakagePolytope poly =
      leakage_polytope(m, budget.clamped_for_alphabet(m));

  struct VertexBest {
    double value = -1.0;
    Eigen::MatrixXd rows;
    std::int64_t evaluations = 0;
  };
  const std::int64_t chunk_count = std::min<std::int64_t>(samples, 64);
  std::vector<VertexBest> per_chunk(static_cast<std::size_t>(chunk_count));
  parallel_chunks(chunk_count, [&](std::int64_t chunk) {
    const std::int64_t lo = chunk * samples / chunk_count;
    const std::int64_t hi = (chunk + 1) * samples / chunk_count;
    VertexBest best;
    for (std::int64_t s = lo; s < hi; ++s) {
      std::mt19937_64 rng(stream_seed(seed, static_cast<std::uint64_t>(s)));
      Eigen::VectorXd objective =
          Eigen::VectorXd::Zero(poly.variable_count());
      for (Eigen::Index k = 0; k < m * m; ++k) {
        objective(k) = standard_normal(rng);
      }
      const SimplexResult result = simplex_maximize(
          objective, poly.a_ub, poly.b_ub, poly.a_eq, poly.b_eq);
      if (result.status != SimplexStatus::kOptimal) continue;
      Eigen::MatrixXd rows(m, m);
      for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
          rows(i, j) = std::clamp(result.x(i * m + j), 0.0, 1.0);
        }
      }
      const Mechanism w = Mechanism::validated(std::move(rows),
                                               kFeasibilityTol);
      const double value = utility(p1, p2, w);
      ++best.evaluations;
      if (value > best.value) {
        best.value = value;
        best.rows = w.rows();
      }
    }
    per_chunk[static_cast<std::size_t>(chunk)] = best;
  });

  VertexBest best;
  for (VertexBest& candidate : per_chunk) {
    best.evaluations += candidate.evaluations;
    if (candidate.value > best.value) {
      best.value = candidate.value;
      best.rows = std::move(candidate.rows);
    }
  }
  if (best.evaluations == 0) {
    throw Error(Errc::kInternal, "no vertex sample produced an optimum");
  }
  return OracleReport{
      .best_mechanism = Mechanism::validated(std::move(best.rows),
                                             kFeasibilityTol),
      .best_utility = best.value,
      .evaluations = best.evaluations,
      .method = OracleMethod::kVertexSample,
      .is_lower_bound = true,
      .rng = kRngName,
      .seed = seed,
  };
}

SimulationReport simulate_test(const Distribution& p1, const Distribution& p2,
                               const Mechanism& w, std::int64_t n,
                               std::int64_t trials, double alpha,
                               std::uint64_t seed) {
  if (p1.size() != p2.size() || p1.size() != w.size()) {
    throw Error(Errc::kDimensionMismatch,
                "hypotheses and mechanism sizes differ");
  }
  if (n < 1) {
    throw Error(Errc::kDomainError, "block length must be positive");
  }
  if (trials < 1) {
    throw Error(Errc::kDomainError, "trial count must be positive");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(Errc::kDomainError,
                "significance level must lie strictly between 0 and 1");
  }

  const Distribution a = pushforward(p1, w);
  const Distribution b = pushforward(p2, w);
  const double theoretical = utility(p1, p2, w);
  const Eigen::Index m = a.size();

  // Per-letter log-likelihood ratio against the first hypothesis.  Letters
  // with zero mass under a hypothesis are never drawn from it, so infinities
  // only enter sums whose trial decides the test with certainty.
  std::vector<double> log_ratio(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j) {
    log_ratio[static_cast<std::size_t>(j)] =
        std::log2(b.probs()(j) / a.probs()(j));
  }
  const CategoricalSampler draw_a(a.probs());
  const CategoricalSampler draw_b(b.probs());

  // Statistic of trial t: the block log-likelihood ratio under the trial's
  // hypothesis.  Streams are indexed by trial so any thread layout fills the
  // same slots with the same values.
  std::vector<double> stat1(static_cast<std::size_t>(trials));
  std::vector<double> stat2(static_cast<std::size_t>(trials));
  const std::int64_t chunk_count = std::min<std::int64_t>(trials, 64);
  parallel_chunks(chunk_count, [&](std::int64_t chunk) {
    const std::int64_t lo = chunk * trials / chunk_count;
    const std::int64_t hi = (chunk + 1) * trials / chunk_count;
    for (std::int64_t t = lo; t < hi; ++t) {
      std::mt19937_64 rng1(stream_seed(seed, static_cast<std::uint64_t>(t)));
      std::mt19937_64 rng2(stream_seed(
          seed, static_cast<std::uint64_t>(trials + t)));
      double s1 = 0.0;
      double s2 = 0.0;
      for (std::int64_t k = 0; k < n; ++k) {
        s1 += log_ratio[static_cast<std::size_t>(draw_a(rng1))];
        s2 += log_ratio[static_cast<std::size_t>(draw_b(rng2))];
      }
      stat1[static_cast<std::size_t>(t)] = s1;
      stat2[static_cast<std::size_t>(t)] = s2;
    }
  });

  // Threshold at the empirical (1 - alpha) quantile under the first
  // hypothesis, with randomization on ties so the type-I rate meets alpha.
  std::vector<double> sorted = stat1;
  std::sort(sorted.begin(), sorted.end());
  const double count = static_cast<double>(trials);
  std::int64_t k = static_cast<std::int64_t>(
      std::ceil((1.0 - alpha) * count));
  k = std::clamp<std::int64_t>(k, 1, trials);
  const double tau = sorted[static_cast<std::size_t>(k - 1)];
  const auto eq_range =
      std::equal_range(sorted.begin(), sorted.end(), tau);
  const double n_gt =
      static_cast<double>(std::distance(eq_range.second, sorted.end()));
  const double n_eq =
      static_cast<double>(std::distance(eq_range.first, eq_range.second));
  const double p_gt = n_gt / count;
  const double p_eq = n_eq / count;
  const double gamma = std::clamp((alpha - p_gt) / p_eq, 0.0, 1.0);

  // Type-II rate by reweighting the first-hypothesis sample: each accepting
  // trial contributes its block likelihood ratio 2^stat.
  std::vector<double> log_terms;
  log_terms.reserve(sorted.size());
  const double log_keep = gamma < 1.0
                              ? std::log2(1.0 - gamma)
                              : -std::numeric_limits<double>::infinity();
  for (const double s : stat1) {
    if (s < tau) {
      log_terms.push_back(s);
    } else if (s == tau && gamma < 1.0) {
      log_terms.push_back(s + log_keep);
    }
  }
  double log_beta = log_sum_exp2(log_terms) - std::log2(count);
  log_beta = std::max(log_beta, -1074.0);

  double direct = 0.0;
  for (const double s : stat2) {
    if (s < tau) {
      direct += 1.0;
    } else if (s == tau) {
      direct += 1.0 - gamma;
    }
  }

  return SimulationReport{
      .n = n,
      .trials = trials,
      .type1_rate = p_gt + gamma * p_eq,
      .type2_rate = std::exp2(log_beta),
      .type2_rate_direct = direct / count,
      .empirical_exponent = std::max(0.0, -log_beta / static_cast<double>(n)),
      .theoretical_exponent = theoretical,
      .rng = kRngName,
      .seed = seed,
  };
}

}  // namespace maxleak
