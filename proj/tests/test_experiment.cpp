#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include "brdlab/errors.hpp"
#include "brdlab/experiment.hpp"
#include "brdlab/io.hpp"
#include "brdlab/oracle.hpp"
#include "support.hpp"

using namespace brdlab;
namespace fs = std::filesystem;

namespace {

ExperimentConfig tiny_config() {
  const auto doc = nlohmann::json::parse(R"({
    "skeleton": {"generator": {"model": "tabular", "n": 3, "m": 3,
                               "strategies_per_player": 3, "max_strategy_size": 2, "seed": 5}},
    "family": "uniform_low",
    "phi": [1, 4],
    "epsilon": [0.2, 1.0],
    "pivot_rules": ["first_improvement", "max_gain"],
    "trials": 6,
    "base_seed": 7,
    "start_policy": {"kind": "random_uniform"}
  })");
  return experiment_config_from_json(doc);
}

}  // namespace

TEST_CASE("config parsing validates shape and values") {
  CHECK_THROWS_AS(experiment_config_from_json(nlohmann::json::parse(R"({"phi": [1]})")), ValidationError);
  CHECK_THROWS_AS(experiment_config_from_json(nlohmann::json::parse(R"({
    "skeleton": {"generator": {"model": "tabular"}},
    "phi": [0.5], "epsilon": [1], "pivot_rules": ["max_gain"]
  })")),
                  ValidationError);
  CHECK_THROWS_AS(experiment_config_from_json(nlohmann::json::parse(R"({
    "skeleton": {"generator": {"model": "tabular"}},
    "phi": [1], "epsilon": [1], "pivot_rules": []
  })")),
                  ValidationError);
}

TEST_CASE("reports are deterministic, including across thread counts") {
  const ExperimentConfig config = tiny_config();
  const ExperimentReport r1 = run_experiment(config, 1);
  const ExperimentReport r1b = run_experiment(config, 1);
  const ExperimentReport r8 = run_experiment(config, 8);

  CHECK(report_to_csv(r1) == report_to_csv(r1b));
  CHECK(report_to_csv(r1) == report_to_csv(r8));
  CHECK(report_to_json(r1, config).dump() == report_to_json(r8, config).dump());
  CHECK(r1.ok);

  // 2 phi x 2 epsilon x 2 pivots cells, 6 trials each.
  REQUIRE(r1.cells.size() == 8);
  for (const auto& cell : r1.cells) {
    CHECK(cell.trial_iterations.size() == 6);
    CHECK(cell.cap_conformant);
    CHECK(cell.all_converged);
    CHECK(cell.mean_to_bound_ratio <= 1.0);
    CHECK(cell.mean_to_bound_ratio >= 0.0);
  }
}

TEST_CASE("start-profile policies produce valid profiles") {
  const Game game = brdlab::testing::random_instance(ModelKind::Polynomial, 404, 4, 4);
  for (StartPolicyKind kind :
       {StartPolicyKind::Lexicographic, StartPolicyKind::RandomUniform, StartPolicyKind::AdversarialWorstOfK}) {
    StartPolicy policy;
    policy.kind = kind;
    policy.k = 4;
    const StrategyProfile start = make_start_profile(game, policy, 11);
    CHECK_NOTHROW(validate_profile(game, start));
  }

  SUBCASE("worst-of-k picks the max-potential sample") {
    StartPolicy policy;
    policy.kind = StartPolicyKind::AdversarialWorstOfK;
    policy.k = 16;
    const double worst = potential(game, make_start_profile(game, policy, 11));
    StartPolicy uniform{StartPolicyKind::RandomUniform, 1};
    for (std::uint64_t j = 0; j < 16; ++j) {
      const double sampled = potential(game, make_start_profile(game, uniform, derive_seed(11, j)));
      CHECK(worst >= sampled - 1e-12);
    }
  }
  SUBCASE("network lexicographic start uses the first path") {
    const Game net = generate_network_skeleton(ModelKind::Tabular, 5, 8, 2, 2, 12);
    const StrategyProfile start = make_start_profile(net, {StartPolicyKind::Lexicographic, 1}, 0);
    CHECK_NOTHROW(validate_profile(net, start));
  }
}

TEST_CASE("a fixed start at an exact equilibrium yields zero iterations") {
  const auto doc = nlohmann::json::parse(R"({
    "skeleton": {"generator": {"model": "tabular", "n": 2, "m": 2,
                               "strategies_per_player": 2, "max_strategy_size": 1, "seed": 40}},
    "family": "uniform_window",
    "phi": [1000000],
    "epsilon": [0.5],
    "pivot_rules": ["best_response"],
    "trials": 1,
    "base_seed": 3
  })");
  ExperimentConfig config = experiment_config_from_json(doc);

  // Replicate the perturbation stream of (cell 0, trial 0), find the exact
  // equilibrium of that realized game, and pin it as the start profile.
  const Game skeleton = generate_skeleton(std::get<GeneratorSpec>(config.skeleton));
  const std::uint64_t trial_seed = derive_seed(config.base_seed, 0, 0);
  const Game realized = perturb(skeleton, {1e6, FamilyKind::UniformWindow, derive_seed(trial_seed, 0)});
  const auto [pne, value] = brute_force_min_potential(realized, {});

  std::vector<std::vector<ResourceId>> choices;
  for (const auto& s : pne.choices) choices.push_back(s.resources());
  config.start_override = choices;

  const ExperimentReport report = run_experiment(config, 1);
  REQUIRE(report.cells.size() == 1);
  CHECK(report.cells[0].mean_iterations == 0.0);
  CHECK(report.cells[0].max_iterations == 0);
}

TEST_CASE("file-based skeletons and network games run end to end") {
  const fs::path dir = fs::temp_directory_path() / "brdlab_exp_net";
  fs::create_directories(dir);
  const fs::path skeleton_path = dir / "net.json";
  save_instance(generate_network_skeleton(ModelKind::CostSharing, 5, 8, 3, 2, 21), skeleton_path);

  nlohmann::json doc{
      {"skeleton", {{"file", skeleton_path.string()}}},
      {"family", "uniform_window"},
      {"phi", {2.0}},
      {"epsilon", {0.2}},
      {"pivot_rules", {"best_response", "random_improving"}},
      {"trials", 8},
      {"base_seed", 5},
      {"start_policy", {{"kind", "random_uniform"}}},
  };
  const ExperimentConfig config = experiment_config_from_json(doc);
  const ExperimentReport report = run_experiment(config, 2);
  CHECK(report.ok);
  REQUIRE(report.cells.size() == 2);
  for (const auto& cell : report.cells) {
    CHECK(cell.cap_conformant);
    CHECK(cell.all_converged);
  }
  fs::remove_all(dir);
}

TEST_CASE("csv layout is one row per cell with the declared header") {
  const ExperimentConfig config = tiny_config();
  const ExperimentReport report = run_experiment(config, 2);
  const std::string csv = report_to_csv(report);
  CHECK(csv.rfind("model,n,m,phi,epsilon,pivot,trials,mean_T,stddev_T,max_T,eq9_conformant,"
                  "smoothed_bound,mean_to_bound_ratio\n",
                  0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 8);
}

TEST_CASE("environment fallback for the thread count") {
  CHECK(default_thread_count() >= 1);
}
