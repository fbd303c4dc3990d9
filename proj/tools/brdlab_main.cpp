// brdlab — seeded experiment runner for better-response dynamics in
// congestion games.
//
// Subcommands:
//   run      batch experiments over a (phi, epsilon, pivot) grid
//   perturb  sample a concrete game from an adversarial skeleton
//   brd      a single dynamics run
//   oracle   brute-force checks on enumerable instances
//   lemma    Monte-Carlo estimate vs. the order-statistic expectation bound
//
// Exit codes: 0 success, 2 validation failure, 3 bound violation.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "brdlab/brd.hpp"
#include "brdlab/errors.hpp"
#include "brdlab/experiment.hpp"
#include "brdlab/io.hpp"
#include "brdlab/lemma.hpp"
#include "brdlab/oracle.hpp"
#include "brdlab/smoothing.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitBoundViolation = 3;

int cmd_run(const std::string& config_path, const std::string& out_dir, bool has_seed, std::uint64_t seed,
            int threads) {
  brdlab::ExperimentConfig config = brdlab::load_experiment_config(config_path);
  if (has_seed) {
    config.base_seed = seed;
    config.echo["base_seed"] = seed;
  }
  const brdlab::ExperimentReport report = brdlab::run_experiment(config, threads);
  brdlab::write_report_files(report, config, out_dir);

  std::cerr << "cells: " << report.cells.size() << ", wall clock: " << report.wall_clock_seconds << " s\n";
  for (const auto& cell : report.cells) {
    std::cerr << "  phi=" << cell.phi << " eps=" << cell.epsilon << " pivot="
              << brdlab::pivot_rule_name(cell.pivot) << ": mean T=" << cell.mean_iterations
              << " (bound " << cell.smoothed_bound << ", " << cell.wall_clock_seconds << " s)\n";
  }

  if (!report.ok) {
    std::cerr << "error: a cell violated its convergence or iteration-bound guarantee\n";
    return kExitBoundViolation;
  }
  return kExitOk;
}

int cmd_perturb(const std::string& in_path, double phi, std::uint64_t seed, const std::string& out_path,
                const std::string& family) {
  const brdlab::Game skeleton = brdlab::load_instance(in_path);
  brdlab::PerturbationSpec spec;
  spec.phi = phi;
  spec.family = brdlab::family_kind_from_name(family);
  spec.seed = seed;
  brdlab::save_instance(brdlab::perturb(skeleton, spec), out_path);
  return kExitOk;
}

int cmd_brd(const std::string& in_path, double epsilon, const std::string& pivot, const std::string& start,
            std::uint64_t seed, std::int64_t max_iterations, const std::string& trace_path) {
  const brdlab::Game game = brdlab::load_instance(in_path);

  brdlab::StartPolicy policy;
  if (start == "lex" || start == "lexicographic") {
    policy.kind = brdlab::StartPolicyKind::Lexicographic;
  } else if (start == "random" || start == "random_uniform") {
    policy.kind = brdlab::StartPolicyKind::RandomUniform;
  } else if (start.rfind("worst:", 0) == 0) {
    policy.kind = brdlab::StartPolicyKind::AdversarialWorstOfK;
    policy.k = std::stoi(start.substr(6));
  } else {
    throw brdlab::ValidationError("unknown start policy: " + start +
                                  " (expected lex | random | worst:K)");
  }
  const brdlab::StrategyProfile start_profile =
      brdlab::make_start_profile(game, policy, brdlab::derive_seed(seed, 1));

  brdlab::BrdConfig config;
  config.epsilon = epsilon;
  config.pivot_rule = brdlab::pivot_rule_from_name(pivot);
  config.max_iterations = max_iterations;
  config.seed = brdlab::derive_seed(seed, 2);
  const brdlab::RunTrace trace = brdlab::run_brd(game, start_profile, config);

  json out;
  out["status"] = trace.status == brdlab::RunStatus::Converged ? "converged" : "iteration_cap_hit";
  out["iterations"] = trace.iterations;
  out["start_potential"] = trace.start_potential;
  out["final_potential"] = trace.final_potential;
  out["final_profile"] = brdlab::profile_to_json(trace.final_profile)["choices"];
  out["iteration_cap"] = brdlab::iteration_cap(game, epsilon);
  std::cout << out.dump(2) << '\n';

  if (!trace_path.empty()) {
    json moves = json::array();
    for (const auto& mv : trace.moves) {
      moves.push_back({{"player", mv.player},
                       {"from", mv.from_strategy.resources()},
                       {"to", mv.to_strategy.resources()},
                       {"cost_before", mv.cost_before},
                       {"cost_after", mv.cost_after},
                       {"potential_after", mv.potential_after}});
    }
    json full = out;
    full["start_profile"] = brdlab::profile_to_json(trace.start_profile)["choices"];
    full["moves"] = std::move(moves);
    brdlab::write_text_file(trace_path, full.dump(2) + "\n");
  }

  if (trace.status != brdlab::RunStatus::Converged ||
      static_cast<double>(trace.iterations) > brdlab::iteration_cap(game, epsilon)) {
    return kExitBoundViolation;
  }
  return kExitOk;
}

int cmd_oracle(const std::string& in_path, double alpha, const std::string& check_path, bool min_potential,
               std::int64_t max_profiles, std::int64_t max_paths) {
  const brdlab::Game game = brdlab::load_instance(in_path);
  brdlab::EnumerationBudget budget;
  budget.max_profiles = max_profiles;
  budget.max_paths_per_player = max_paths;

  json out;
  if (min_potential) {
    const auto [profile, value] = brdlab::brute_force_min_potential(game, budget);
    out["min_potential"] = value;
    out["profile"] = brdlab::profile_to_json(profile)["choices"];
    out["is_exact_pne"] = brdlab::brute_force_is_alpha_pne(game, profile, 1.0, budget);
  } else {
    const brdlab::StrategyProfile profile = brdlab::load_profile(check_path, game);
    out["alpha"] = alpha;
    out["is_alpha_pne"] = brdlab::brute_force_is_alpha_pne(game, profile, alpha, budget);
    out["potential"] = brdlab::oracle_potential(game, profile);
  }
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int cmd_lemma(std::int64_t mu, double alpha, double beta, double phi, std::int64_t trials,
              std::uint64_t seed, const std::string& family, double center) {
  brdlab::LemmaParams params{mu, alpha, beta, phi};
  brdlab::PhiSmoothFamily f;
  f.kind = brdlab::family_kind_from_name(family);
  f.phi = phi;
  f.center = center;

  const brdlab::McEstimate estimate = brdlab::lemma_mc_estimate(params, f, trials, seed);
  const double rhs = brdlab::lemma_bound_rhs(params);

  json out;
  out["mean"] = estimate.mean;
  out["stderr"] = estimate.stderr_;
  out["trials"] = estimate.trials;
  out["bound_rhs"] = rhs;
  out["within_bound"] = estimate.mean - 3.0 * estimate.stderr_ <= rhs;
  std::cout << out.dump(2) << '\n';
  return out["within_bound"].get<bool>() ? kExitOk : kExitBoundViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"better-response dynamics lab for congestion games"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run a batch experiment from a JSON config");
  std::string run_config, run_out;
  std::uint64_t run_seed = 0;
  int run_threads = brdlab::default_thread_count();
  run->add_option("--config", run_config, "experiment config path")->required();
  run->add_option("--out", run_out, "output directory for report.csv / report.json")->required();
  auto* seed_opt = run->add_option("--seed", run_seed, "override the config's base seed");
  run->add_option("--threads", run_threads, "worker threads (default: BRDLAB_THREADS or 1)");

  // perturb
  auto* perturb = app.add_subcommand("perturb", "perturb a skeleton instance");
  std::string pe_in, pe_out, pe_family = "uniform_window";
  double pe_phi = 1.0;
  std::uint64_t pe_seed = 0;
  perturb->add_option("--in", pe_in, "skeleton instance path")->required();
  perturb->add_option("--phi", pe_phi, "density bound, >= 1")->required();
  perturb->add_option("--seed", pe_seed, "rng seed")->required();
  perturb->add_option("--out", pe_out, "output instance path")->required();
  perturb->add_option("--family", pe_family, "uniform_window | uniform_low");

  // brd
  auto* brd = app.add_subcommand("brd", "single better-response dynamics run");
  std::string brd_in, brd_pivot = "first_improvement", brd_start = "lex", brd_trace;
  double brd_epsilon = 0.0;
  std::uint64_t brd_seed = 0;
  std::int64_t brd_max_iters = 0;
  brd->add_option("--in", brd_in, "instance path")->required();
  brd->add_option("--epsilon", brd_epsilon, "approximation slack, > 0")->required();
  brd->add_option("--pivot", brd_pivot, "first_improvement | best_response | max_gain | random_improving");
  brd->add_option("--start", brd_start, "lex | random | worst:K");
  brd->add_option("--seed", brd_seed, "rng seed");
  brd->add_option("--max-iters", brd_max_iters, "iteration limit (default: instance cap)");
  brd->add_option("--trace", brd_trace, "write the full move trace to this path");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "brute-force ground truth on enumerable instances");
  std::string or_in, or_check;
  double or_alpha = 1.0;
  bool or_min_potential = false;
  std::int64_t or_max_profiles = 1'000'000, or_max_paths = 10'000;
  oracle->add_option("--in", or_in, "instance path")->required();
  oracle->add_option("--alpha", or_alpha, "approximation factor, >= 1");
  auto* check_opt = oracle->add_option("--check", or_check, "profile file to verify");
  auto* minp_opt = oracle->add_flag("--min-potential", or_min_potential, "find the potential minimizer");
  oracle->add_option("--max-profiles", or_max_profiles, "enumeration budget");
  oracle->add_option("--max-paths", or_max_paths, "per-player path budget");
  check_opt->excludes(minp_opt);

  // lemma
  auto* lemma = app.add_subcommand("lemma", "Monte-Carlo check of the expectation bound");
  std::int64_t le_mu = 2, le_trials = 100'000;
  double le_alpha = 1.0, le_beta = 0.0, le_phi = 1.0, le_center = 0.5;
  std::uint64_t le_seed = 0;
  std::string le_family = "uniform_low";
  lemma->add_option("--mu", le_mu, "number of variables, >= 1")->required();
  lemma->add_option("--alpha", le_alpha, "ratio scale, >= 1")->required();
  lemma->add_option("--beta", le_beta, "truncation exponent, >= 0")->required();
  lemma->add_option("--phi", le_phi, "density bound, >= 1")->required();
  lemma->add_option("--trials", le_trials, "Monte-Carlo trials");
  lemma->add_option("--seed", le_seed, "rng seed");
  lemma->add_option("--family", le_family, "uniform_low | uniform_window");
  lemma->add_option("--center", le_center, "window center (uniform_window only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*run) return cmd_run(run_config, run_out, seed_opt->count() > 0, run_seed, run_threads);
    if (*perturb) return cmd_perturb(pe_in, pe_phi, pe_seed, pe_out, pe_family);
    if (*brd) return cmd_brd(brd_in, brd_epsilon, brd_pivot, brd_start, brd_seed, brd_max_iters, brd_trace);
    if (*oracle) {
      if (!or_min_potential && or_check.empty()) {
        throw brdlab::ValidationError("oracle: pass --check PROFILE or --min-potential");
      }
      return cmd_oracle(or_in, or_alpha, or_check, or_min_potential, or_max_profiles, or_max_paths);
    }
    if (*lemma) return cmd_lemma(le_mu, le_alpha, le_beta, le_phi, le_trials, le_seed, le_family, le_center);
  } catch (const brdlab::BoundViolationError& e) {
    std::cerr << "bound violation: " << e.what() << '\n';
    return kExitBoundViolation;
  } catch (const brdlab::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const brdlab::BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}
