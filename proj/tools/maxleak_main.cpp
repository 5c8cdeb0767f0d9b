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

// Command-line front end: leakage evaluation, tradeoff solving, budget
// sweeps, hypothesis-test simulation, and reference oracles.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxleak/binary.hpp"
#include "maxleak/divergence.hpp"
#include "maxleak/eit.hpp"
#include "maxleak/io.hpp"
#include "maxleak/leakage.hpp"
#include "maxleak/lp.hpp"
#include "maxleak/oracle.hpp"
#include "maxleak/parallel.hpp"
#include "maxleak/types.hpp"

namespace maxleak {
namespace {

enum class CliMethod { kAuto, kBinary, kEit, kLp, kOracle };

struct SolveOptions {
  CliMethod method = CliMethod::kAuto;
  bool force_regime = false;
  std::int64_t samples = 2000;
  std::int64_t resolution = 2001;
  std::uint64_t seed = 1;
  double tol = kFeasibilityTol;
};

CliMethod cli_method_from_string(const std::string& name) {
  if (name == "auto") return CliMethod::kAuto;
  if (name == "binary") return CliMethod::kBinary;
  if (name == "eit") return CliMethod::kEit;
  if (name == "lp") return CliMethod::kLp;
  if (name == "oracle") return CliMethod::kOracle;
  throw Error(Errc::kDomainError, "unknown method \"" + name +
                                      "\"; expected auto, binary, eit, lp, "
                                      "or oracle");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::kDomainError, "cannot open \"" + path + "\"");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Inputs are inline JSON or @path references to JSON files.
nlohmann::json parse_json_argument(const std::string& text,
                                   const std::string& what) {
  const std::string payload =
      !text.empty() && text.front() == '@' ? read_text_file(text.substr(1))
                                           : text;
  nlohmann::json parsed =
      nlohmann::json::parse(payload, /*cb=*/nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded()) {
    throw Error(Errc::kDomainError, what + " is not valid JSON: " + text);
  }
  return parsed;
}

// A bare number p is shorthand for the two-letter distribution (1-p, p).
Distribution parse_distribution(const std::string& text,
                                const std::string& what, double tol) {
  nlohmann::json parsed = parse_json_argument(text, what);
  if (parsed.is_number()) {
    const double p = parsed.get<double>();
    if (!(p > 0.0 && p < 1.0)) {
      throw Error(Errc::kInvalidDistribution,
                  what + " scalar must lie strictly inside (0, 1)");
    }
    return bernoulli(p);
  }
  return distribution_from_json(parsed, /*strict=*/true, tol);
}

Mechanism parse_mechanism(const std::string& text, double tol) {
  return mechanism_from_json(parse_json_argument(text, "mechanism"), tol);
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw Error(Errc::kDomainError, "cannot write \"" + out_path + "\"");
  }
  out << text;
}

double bernoulli_parameter(const Distribution& p) { return p.probs()(1); }

PutSolution solution_from_oracle(const OracleReport& report) {
  return PutSolution{
      .mechanism = report.best_mechanism,
      .utility_bits = report.best_utility,
      .leakage_bits = maximal_leakage(report.best_mechanism),
      .method = report.method == OracleMethod::kGrid
                    ? SolveMethod::kOracleGrid
                    : SolveMethod::kOracleVertexSample,
      .provenance = {.exact_utility_bits = report.best_utility,
                     .surrogate_value = std::nullopt,
                     .tie = false,
                     .tie_candidates = {},
                     .rng = report.rng,
                     .seed = report.seed,
                     .evaluations = report.evaluations,
                     .lower_bound = report.is_lower_bound},
  };
}

PutSolution solve_point(const Distribution& p1, const Distribution& p2,
                        const LeakageBudget& budget,
                        const SolveOptions& options) {
  const Eigen::Index m = p1.size();
  CliMethod method = options.method;
  if (method == CliMethod::kAuto) {
    if (m == 2) {
      method = CliMethod::kBinary;
    } else if (budget.bits() <= 1.0 + options.tol) {
      method = CliMethod::kEit;
    } else if (budget.bits() >=
               std::log2(static_cast<double>(m - 1)) - options.tol) {
      method = CliMethod::kLp;
    } else {
      std::fprintf(stderr,
                   "notice: no closed form for M=%lld at l=%g; sampling "
                   "oracle reports a lower bound\n",
                   static_cast<long long>(m), budget.bits());
      method = CliMethod::kOracle;
    }
  }
  switch (method) {
    case CliMethod::kBinary: {
      if (m != 2) {
        throw Error(Errc::kDomainError,
                    "binary method requires a two-letter alphabet");
      }
      return solve_binary(BinaryParams::validated(bernoulli_parameter(p1),
                                                  bernoulli_parameter(p2),
                                                  budget.bits()));
    }
    case CliMethod::kEit:
      return solve_eit(p1, p2, budget);
    case CliMethod::kLp: {
      const double regime_floor = std::log2(static_cast<double>(m - 1));
      if (budget.bits() < regime_floor - options.tol &&
          !options.force_regime) {
        throw Error(Errc::kBudgetOutOfRange,
                    "lp method expects l >= log2(M-1); pass --force-regime "
                    "to run the linearization anyway");
      }
      return solve_lp(p1, p2, budget);
    }
    case CliMethod::kOracle: {
      if (m == 2) {
        return solution_from_oracle(
            grid_oracle_binary(bernoulli_parameter(p1),
                               bernoulli_parameter(p2), budget.bits(),
                               options.resolution));
      }
      return solution_from_oracle(vertex_sample_oracle(
          p1, p2, budget, options.samples, options.seed));
    }
    case CliMethod::kAuto:
      break;
  }
  throw Error(Errc::kInternal, "method dispatch fell through");
}

int run_leakage(const std::string& mechanism_text, double tol,
                const std::string& out_path) {
  Mechanism w = parse_mechanism(mechanism_text, tol);
  nlohmann::json out{
      {"leakage_bits", round_significant(maximal_leakage(w))},
      {"is_rank_one", is_rank_one(w, kFeasibilityTol)},
      {"is_permutation", is_permutation_matrix(w, kFeasibilityTol)},
  };
  write_output(out.dump(2) + "\n", out_path);
  return 0;
}

int run_solve(const std::string& p1_text, const std::string& p2_text,
              double l, const SolveOptions& options,
              const std::string& out_path) {
  Distribution p1 = parse_distribution(p1_text, "--p1", options.tol);
  Distribution p2 = parse_distribution(p2_text, "--p2", options.tol);
  if (p1.size() != p2.size()) {
    throw Error(Errc::kDimensionMismatch,
                "--p1 and --p2 must share one alphabet");
  }
  const LeakageBudget budget =
      LeakageBudget::from_bits(l).clamped_for_alphabet(p1.size());
  PutSolution solution = solve_point(p1, p2, budget, options);
  solution.validate(p1, p2);
  write_output(to_json(solution).dump(2) + "\n", out_path);
  return 0;
}

std::string mechanism_id(std::size_t index) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "m%03zu", index);
  return buffer;
}

int run_sweep(const std::string& p1_text, const std::string& p2_text,
              double l_min, double l_max, std::int64_t steps,
              const SolveOptions& options, const std::string& out_path,
              std::string mechanisms_path) {
  Distribution p1 = parse_distribution(p1_text, "--p1", options.tol);
  Distribution p2 = parse_distribution(p2_text, "--p2", options.tol);
  if (p1.size() != p2.size()) {
    throw Error(Errc::kDimensionMismatch,
                "--p1 and --p2 must share one alphabet");
  }
  if (steps < 1) {
    throw Error(Errc::kDomainError, "--steps must be at least 1");
  }
  if (l_min > l_max) {
    throw Error(Errc::kDomainError, "--l-min must not exceed --l-max");
  }
  if (mechanisms_path.empty()) {
    mechanisms_path = out_path.empty() ? "sweep_mechanisms.json"
                                       : out_path + ".mechanisms.json";
  }
  std::vector<LeakageBudget> budgets;
  budgets.reserve(static_cast<std::size_t>(steps));
  for (std::int64_t i = 0; i < steps; ++i) {
    const double l =
        steps == 1 ? l_min
                   : l_min + (l_max - l_min) * static_cast<double>(i) /
                                 static_cast<double>(steps - 1);
    budgets.push_back(
        LeakageBudget::from_bits(l).clamped_for_alphabet(p1.size()));
  }
  // Points are independent; rows are buffered and emitted in budget order
  // no matter which worker finished first.
  std::vector<std::optional<PutSolution>> solutions(
      static_cast<std::size_t>(steps));
  std::exception_ptr first_error;
  try {
    parallel_chunks(steps, [&](std::int64_t i) {
      PutSolution solution =
          solve_point(p1, p2, budgets[static_cast<std::size_t>(i)], options);
      solution.validate(p1, p2);
      solutions[static_cast<std::size_t>(i)] = std::move(solution);
    });
  } catch (...) {
    first_error = std::current_exception();
  }

  std::ostringstream csv;
  nlohmann::json sidecar_list = nlohmann::json::array();
  csv << "l_bits,utility_bits,surrogate_value,mechanism_id\n";
  std::size_t emitted = 0;
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    if (!solutions[i].has_value()) break;
    const PutSolution& solution = *solutions[i];
    const std::string id = mechanism_id(i);
    csv << format_significant(budgets[i].bits()) << ','
        << format_significant(solution.utility_bits) << ',';
    if (solution.provenance.surrogate_value.has_value()) {
      csv << format_significant(*solution.provenance.surrogate_value);
    }
    csv << ',' << id << '\n';
    sidecar_list.push_back(nlohmann::json{
        {"id", id},
        {"l_bits", round_significant(budgets[i].bits())},
        {"method", to_string(solution.method)},
        {"mechanism", to_json(solution.mechanism)},
    });
    ++emitted;
  }
  write_output(csv.str(), out_path);
  nlohmann::json sidecar{
      {"p1", to_json(p1)},
      {"p2", to_json(p2)},
      {"mechanisms", std::move(sidecar_list)},
  };
  write_output(sidecar.dump(2) + "\n", mechanisms_path);
  if (first_error) {
    std::fprintf(stderr, "sweep aborted after %zu of %lld points\n", emitted,
                 static_cast<long long>(steps));
    std::rethrow_exception(first_error);
  }

  // A larger budget can only enlarge the feasible set, so utilities from one
  // method must be non-decreasing across the sweep.
  TradeoffCurve curve;
  curve.points.reserve(solutions.size());
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    curve.points.push_back({budgets[i], *solutions[i]});
  }
  curve.validate();
  return 0;
}

int run_simulate(const std::string& p1_text, const std::string& p2_text,
                 const std::string& mechanism_text, std::optional<double> l,
                 const SolveOptions& options, std::int64_t n,
                 std::int64_t trials, double alpha, std::uint64_t seed,
                 const std::string& out_path) {
  Distribution p1 = parse_distribution(p1_text, "--p1", options.tol);
  Distribution p2 = parse_distribution(p2_text, "--p2", options.tol);
  if (p1.size() != p2.size()) {
    throw Error(Errc::kDimensionMismatch,
                "--p1 and --p2 must share one alphabet");
  }
  if (!mechanism_text.empty() && l.has_value()) {
    throw Error(Errc::kDomainError,
                "pass either --mechanism or --l, not both");
  }
  std::optional<Mechanism> w;
  if (!mechanism_text.empty()) {
    w = parse_mechanism(mechanism_text, options.tol);
  } else if (l.has_value()) {
    const LeakageBudget budget =
        LeakageBudget::from_bits(*l).clamped_for_alphabet(p1.size());
    w = solve_point(p1, p2, budget, options).mechanism;
  } else {
    throw Error(Errc::kDomainError,
                "simulate needs --mechanism or a budget via --l");
  }
  if (w->size() != p1.size()) {
    throw Error(Errc::kDimensionMismatch,
                "mechanism size does not match the distributions");
  }
  SimulationReport report = simulate_test(p1, p2, *w, n, trials, alpha, seed);
  write_output(to_json(report).dump(2) + "\n", out_path);
  return 0;
}

int run_oracle(const std::string& p1_text, const std::string& p2_text,
               double l, const SolveOptions& options,
               const std::string& out_path) {
  Distribution p1 = parse_distribution(p1_text, "--p1", options.tol);
  Distribution p2 = parse_distribution(p2_text, "--p2", options.tol);
  if (p1.size() != p2.size()) {
    throw Error(Errc::kDimensionMismatch,
                "--p1 and --p2 must share one alphabet");
  }
  const LeakageBudget budget =
      LeakageBudget::from_bits(l).clamped_for_alphabet(p1.size());
  OracleReport report =
      p1.size() == 2
          ? grid_oracle_binary(bernoulli_parameter(p1),
                               bernoulli_parameter(p2), budget.bits(),
                               options.resolution)
          : vertex_sample_oracle(p1, p2, budget, options.samples,
                                 options.seed);
  write_output(to_json(report).dump(2) + "\n", out_path);
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{
      "maxleak: privacy mechanisms maximizing the hypothesis-testing error "
      "exponent under a maximal-leakage budget"};
  app.require_subcommand(1);

  std::string p1_text;
  std::string p2_text;
  std::string mechanism_text;
  std::string method_name = "auto";
  std::string out_path;
  std::string mechanisms_path;
  double l = 0.0;
  double l_min = 0.0;
  double l_max = 1.0;
  std::int64_t steps = 11;
  std::int64_t n = 1000;
  std::int64_t trials = 1000;
  double alpha = 0.1;
  SolveOptions options;
  std::uint64_t seed = 1;

  const std::string dist_help =
      "distribution: JSON array, @path, or a scalar p meaning [1-p, p]";

  CLI::App* leakage = app.add_subcommand(
      "leakage", "Maximal leakage of a mechanism in bits");
  leakage->add_option("--mechanism", mechanism_text,
                      "mechanism: JSON rows or @path")
      ->required();
  leakage->add_option("--tol", options.tol, "parse tolerance");
  leakage->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* solve = app.add_subcommand(
      "solve", "Best mechanism for one leakage budget");
  solve->add_option("--p1", p1_text, dist_help)->required();
  solve->add_option("--p2", p2_text, dist_help)->required();
  solve->add_option("--l", l, "leakage budget in bits")->required();
  solve->add_option("--method", method_name,
                    "auto, binary, eit, lp, or oracle");
  solve->add_option("--samples", options.samples,
                    "vertex samples for the oracle method");
  solve->add_option("--resolution", options.resolution,
                    "grid resolution for the binary oracle");
  solve->add_option("--seed", options.seed, "oracle sampling seed");
  solve->add_option("--tol", options.tol, "parse/feasibility tolerance");
  solve->add_flag("--force-regime", options.force_regime,
                  "run lp below its l >= log2(M-1) regime");
  solve->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Tradeoff curve over a budget range (CSV)");
  sweep->add_option("--p1", p1_text, dist_help)->required();
  sweep->add_option("--p2", p2_text, dist_help)->required();
  sweep->add_option("--l-min", l_min, "lowest budget in bits")->required();
  sweep->add_option("--l-max", l_max, "highest budget in bits")->required();
  sweep->add_option("--steps", steps, "number of sweep points");
  sweep->add_option("--method", method_name,
                    "auto, binary, eit, lp, or oracle");
  sweep->add_option("--samples", options.samples,
                    "vertex samples for the oracle method");
  sweep->add_option("--resolution", options.resolution,
                    "grid resolution for the binary oracle");
  sweep->add_option("--seed", options.seed, "oracle sampling seed");
  sweep->add_option("--tol", options.tol, "parse/feasibility tolerance");
  sweep->add_flag("--force-regime", options.force_regime,
                  "run lp below its l >= log2(M-1) regime");
  sweep->add_option("--out", out_path, "CSV path (default stdout)");
  sweep->add_option("--mechanisms-out", mechanisms_path,
                    "sidecar JSON path (default <out>.mechanisms.json)");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo check of the error exponent");
  simulate->add_option("--p1", p1_text, dist_help)->required();
  simulate->add_option("--p2", p2_text, dist_help)->required();
  simulate->add_option("--mechanism", mechanism_text,
                       "mechanism: JSON rows or @path");
  CLI::Option* sim_l =
      simulate->add_option("--l", l, "solve for this budget instead");
  simulate->add_option("--method", method_name,
                       "solver when --l is used: auto, binary, eit, lp, "
                       "oracle");
  simulate->add_option("--n", n, "samples per trial");
  simulate->add_option("--trials", trials, "number of trials");
  simulate->add_option("--alpha", alpha, "type-I error budget");
  simulate->add_option("--seed", seed, "simulation seed");
  simulate->add_option("--samples", options.samples,
                       "vertex samples for the oracle method");
  simulate->add_option("--resolution", options.resolution,
                       "grid resolution for the binary oracle");
  simulate->add_option("--tol", options.tol, "parse tolerance");
  simulate->add_flag("--force-regime", options.force_regime,
                     "run lp below its l >= log2(M-1) regime");
  simulate->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "Reference search: grid (M=2) or vertex sampling");
  oracle->add_option("--p1", p1_text, dist_help)->required();
  oracle->add_option("--p2", p2_text, dist_help)->required();
  oracle->add_option("--l", l, "leakage budget in bits")->required();
  oracle->add_option("--resolution", options.resolution,
                     "grid resolution (M=2)");
  oracle->add_option("--samples", options.samples, "vertex samples (M>=3)");
  oracle->add_option("--seed", options.seed, "sampling seed");
  oracle->add_option("--tol", options.tol, "parse tolerance");
  oracle->add_option("--out", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  options.method = cli_method_from_string(method_name);
  if (leakage->parsed()) {
    return run_leakage(mechanism_text, options.tol, out_path);
  }
  if (solve->parsed()) {
    return run_solve(p1_text, p2_text, l, options, out_path);
  }
  if (sweep->parsed()) {
    return run_sweep(p1_text, p2_text, l_min, l_max, steps, options,
                     out_path, mechanisms_path);
  }
  if (simulate->parsed()) {
    std::optional<double> budget_bits;
    if (sim_l->count() > 0) budget_bits = l;
    return run_simulate(p1_text, p2_text, mechanism_text, budget_bits,
                        options, n, trials, alpha, seed, out_path);
  }
  if (oracle->parsed()) {
    return run_oracle(p1_text, p2_text, l, options, out_path);
  }
  return 2;
}

}  // namespace
}  // namespace maxleak

int main(int argc, char** argv) {
  try {
    return maxleak::run(argc, argv);
  } catch (const maxleak::Error& e) {
    std::fprintf(stderr, "error: %s [%s]\n", e.what(),
                 maxleak::errc_name(e.code()));
    return maxleak::exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 4;
  }
}
