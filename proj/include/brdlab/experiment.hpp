#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "brdlab/brd.hpp"
#include "brdlab/generator.hpp"
#include "brdlab/smoothing.hpp"

namespace brdlab {

enum class StartPolicyKind { Lexicographic, RandomUniform, AdversarialWorstOfK };

struct StartPolicy {
  StartPolicyKind kind = StartPolicyKind::Lexicographic;
  int k = 8;  // AdversarialWorstOfK: start from the max-potential profile of k samples
};

// Builds the trial's start profile. RandomUniform samples each player's
// strategy uniformly (explicit games) or via a shuffled DFS path (network
// games); WorstOfK is a cheap adversary proxy over k such samples.
StrategyProfile make_start_profile(const Game& game, const StartPolicy& policy, std::uint64_t seed);

struct ExperimentConfig {
  std::variant<std::filesystem::path, GeneratorSpec> skeleton;
  FamilyKind family = FamilyKind::UniformWindow;
  std::vector<double> phis;
  std::vector<double> epsilons;
  std::vector<PivotRule> pivots;
  int trials = 1;
  std::uint64_t base_seed = 0;
  StartPolicy start_policy;
  // Optional fixed start (resource lists per player); overrides the policy.
  std::optional<std::vector<std::vector<ResourceId>>> start_override;

  // Original config document, echoed verbatim into reports.
  nlohmann::json echo;
};

ExperimentConfig experiment_config_from_json(const nlohmann::json& doc);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

// One (phi, epsilon, pivot) grid cell. Timing fields are informational only
// and are kept out of the serialized reports so identical (config, seed)
// runs produce byte-identical artifacts.
struct CellResult {
  double phi = 0.0;
  double epsilon = 0.0;
  PivotRule pivot = PivotRule::FirstImprovement;
  std::vector<std::int64_t> trial_iterations;
  double mean_iterations = 0.0;
  double stddev_iterations = 0.0;
  std::int64_t max_iterations = 0;
  bool cap_conformant = true;     // every trial obeyed its realized-instance cap
  bool all_converged = true;
  double smoothed_bound = 0.0;    // closed-form expectation bound for the cell
  double mean_to_bound_ratio = 0.0;
  double wall_clock_seconds = 0.0;  // not serialized
};

struct ExperimentReport {
  ModelKind model = ModelKind::Tabular;
  int n = 0;
  int m = 0;
  std::vector<CellResult> cells;
  bool ok = true;
  double wall_clock_seconds = 0.0;  // not serialized
};

// Runs trials for every cell of the config grid. Seeds derive from
// (base_seed, cell index, trial index), so reports are identical for any
// thread count. Throws ValidationError on malformed inputs; cap violations
// and non-convergence are recorded in the report (ok = false).
ExperimentReport run_experiment(const ExperimentConfig& config, int threads);

std::string report_to_csv(const ExperimentReport& report);
nlohmann::json report_to_json(const ExperimentReport& report, const ExperimentConfig& config);

// Writes report.csv and report.json under out_dir.
void write_report_files(const ExperimentReport& report, const ExperimentConfig& config,
                        const std::filesystem::path& out_dir);

// --threads fallback: BRDLAB_THREADS, else 1.
int default_thread_count();

}  // namespace brdlab
