#include "brdlab/experiment.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "brdlab/errors.hpp"
#include "brdlab/io.hpp"
#include "brdlab/lemma.hpp"
#include "brdlab/oracle.hpp"

namespace brdlab {

using nlohmann::json;

namespace {

// Stream labels for per-trial seed derivation.
constexpr std::uint64_t kPerturbLabel = 0;
constexpr std::uint64_t kStartLabel = 1;
constexpr std::uint64_t kBrdLabel = 2;

// Shortest round-trip decimal; keeps report bytes reproducible.
std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

StartPolicy start_policy_from_json(const json& doc) {
  StartPolicy policy;
  if (!doc.is_object() || !doc.contains("kind")) {
    throw ValidationError("start_policy: expected an object with a \"kind\" field");
  }
  const std::string kind = doc["kind"].get<std::string>();
  if (kind == "lexicographic") {
    policy.kind = StartPolicyKind::Lexicographic;
  } else if (kind == "random_uniform") {
    policy.kind = StartPolicyKind::RandomUniform;
  } else if (kind == "adversarial_worst_of_k") {
    policy.kind = StartPolicyKind::AdversarialWorstOfK;
    policy.k = doc.value("k", 8);
    if (policy.k < 1) throw ValidationError("start_policy.k must be at least 1");
  } else {
    throw ValidationError("unknown start policy: " + kind);
  }
  return policy;
}

GeneratorSpec generator_spec_from_json(const json& doc) {
  GeneratorSpec spec;
  if (!doc.contains("model")) throw ValidationError("generator: missing \"model\"");
  spec.model = model_kind_from_name(doc["model"].get<std::string>());
  spec.n = doc.value("n", 2);
  spec.m = doc.value("m", 2);
  spec.strategies_per_player = doc.value("strategies_per_player", 3);
  spec.max_strategy_size = doc.value("max_strategy_size", 3);
  spec.total_breaks = doc.value("total_breaks", 0);
  spec.degree = doc.value("degree", 2);
  spec.seed = doc.value("seed", std::uint64_t{0});
  return spec;
}

struct TrialResult {
  std::int64_t iterations = 0;
  bool converged = false;
  bool cap_ok = false;
  double seconds = 0.0;
  std::string error;  // nonempty on hard failure
  bool bound_error = false;
};

}  // namespace

StrategyProfile make_start_profile(const Game& game, const StartPolicy& policy, std::uint64_t seed) {
  auto sample = [&](std::uint64_t s) {
    CounterRng rng(s);
    StrategyProfile profile;
    profile.choices.reserve(static_cast<std::size_t>(game.n));
    for (int i = 0; i < game.n; ++i) {
      if (game.is_network()) {
        const auto& [o, d] = game.network().od_pairs[static_cast<std::size_t>(i)];
        auto path = random_simple_path(game.network(), o, d, rng);
        if (!path) throw ValidationError("player " + std::to_string(i + 1) + ": no origin-destination path");
        profile.choices.push_back(path->to_strategy());
      } else {
        const auto& set = game.explicit_sets()[static_cast<std::size_t>(i)];
        profile.choices.push_back(set[static_cast<std::size_t>(rng.next_below(set.size()))]);
      }
    }
    return profile;
  };

  switch (policy.kind) {
    case StartPolicyKind::Lexicographic: {
      StrategyProfile profile;
      profile.choices.reserve(static_cast<std::size_t>(game.n));
      for (int i = 0; i < game.n; ++i) {
        if (game.is_network()) {
          const auto& [o, d] = game.network().od_pairs[static_cast<std::size_t>(i)];
          profile.choices.push_back(lexicographic_first_path(game.network(), o, d).to_strategy());
        } else {
          profile.choices.push_back(game.explicit_sets()[static_cast<std::size_t>(i)].front());
        }
      }
      return profile;
    }
    case StartPolicyKind::RandomUniform:
      return sample(seed);
    case StartPolicyKind::AdversarialWorstOfK: {
      StrategyProfile worst;
      double worst_phi = -1.0;
      for (int j = 0; j < policy.k; ++j) {
        StrategyProfile candidate = sample(derive_seed(seed, static_cast<std::uint64_t>(j)));
        const double phi = potential(game, candidate);
        if (phi > worst_phi) {
          worst_phi = phi;
          worst = std::move(candidate);
        }
      }
      return worst;
    }
  }
  throw ValidationError("unknown start policy");
}

ExperimentConfig experiment_config_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("config: expected a JSON object");
  ExperimentConfig config;
  config.echo = doc;

  const json& skeleton = doc.contains("skeleton") ? doc["skeleton"] : json();
  if (!skeleton.is_object() || (skeleton.contains("file") == skeleton.contains("generator"))) {
    throw ValidationError("config.skeleton: expected exactly one of \"file\" or \"generator\"");
  }
  if (skeleton.contains("file")) {
    config.skeleton = std::filesystem::path(skeleton["file"].get<std::string>());
  } else {
    config.skeleton = generator_spec_from_json(skeleton["generator"]);
  }

  config.family = family_kind_from_name(doc.value("family", "uniform_window"));

  auto number_list = [&](const char* key, bool required) {
    std::vector<double> out;
    if (!doc.contains(key)) {
      if (required) throw ValidationError(std::string("config: missing \"") + key + "\"");
      return out;
    }
    for (const auto& v : doc[key]) out.push_back(v.get<double>());
    if (out.empty()) throw ValidationError(std::string("config field \"") + key + "\" must be nonempty");
    return out;
  };
  config.phis = number_list("phi", true);
  config.epsilons = number_list("epsilon", true);
  for (double phi : config.phis) {
    if (!(phi >= 1.0)) throw ValidationError("config: phi values must be >= 1");
  }
  for (double eps : config.epsilons) {
    if (!(eps > 0.0)) throw ValidationError("config: epsilon values must be positive");
  }

  if (!doc.contains("pivot_rules") || !doc["pivot_rules"].is_array() || doc["pivot_rules"].empty()) {
    throw ValidationError("config: missing nonempty \"pivot_rules\"");
  }
  for (const auto& name : doc["pivot_rules"]) {
    config.pivots.push_back(pivot_rule_from_name(name.get<std::string>()));
  }

  config.trials = doc.value("trials", 1);
  if (config.trials < 1) throw ValidationError("config: trials must be at least 1");
  config.base_seed = doc.value("base_seed", std::uint64_t{0});
  if (doc.contains("start_policy")) config.start_policy = start_policy_from_json(doc["start_policy"]);
  if (doc.contains("start_profile")) {
    std::vector<std::vector<ResourceId>> choices;
    for (const auto& row : doc["start_profile"]) {
      choices.push_back(row.get<std::vector<ResourceId>>());
    }
    config.start_override = std::move(choices);
  }
  return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  ExperimentConfig config = experiment_config_from_json(parse_json_file(path));
  // Skeleton paths are relative to the config file.
  if (auto* file = std::get_if<std::filesystem::path>(&config.skeleton)) {
    if (file->is_relative() && path.has_parent_path()) {
      *file = path.parent_path() / *file;
      config.echo["skeleton"]["file"] = file->string();
    }
  }
  return config;
}

ExperimentReport run_experiment(const ExperimentConfig& config, int threads) {
  if (threads < 1) threads = 1;
  const auto t_begin = std::chrono::steady_clock::now();

  Game skeleton;
  if (const auto* file = std::get_if<std::filesystem::path>(&config.skeleton)) {
    skeleton = load_instance(*file);
  } else {
    skeleton = generate_skeleton(std::get<GeneratorSpec>(config.skeleton));
  }
  validate_game_or_throw(skeleton);

  ExperimentReport report;
  report.model = model_kind(skeleton.cost_model);
  report.n = skeleton.n;
  report.m = skeleton.m;

  // Per-model bound query; the perturbed structure (breaks, supports) is the
  // skeleton's, so the closed-form bound is the same for every trial of a cell.
  BoundQuery query;
  query.model = report.model;
  query.n = skeleton.n;
  query.m = skeleton.m;
  if (const auto* step = std::get_if<StepFunctionCosts>(&skeleton.cost_model)) {
    query.total_breaks = step->total_breaks();
  }
  if (const auto* poly = std::get_if<PolynomialCosts>(&skeleton.cost_model)) {
    query.degree = poly->degree;
    query.total_terms = poly->total_terms();
  }

  struct CellSpec {
    double phi;
    double epsilon;
    PivotRule pivot;
  };
  std::vector<CellSpec> cells;
  for (double phi : config.phis) {
    for (double eps : config.epsilons) {
      for (PivotRule pivot : config.pivots) cells.push_back({phi, eps, pivot});
    }
  }

  std::optional<StrategyProfile> override_profile;
  if (config.start_override) {
    StrategyProfile profile;
    for (const auto& ids : *config.start_override) profile.choices.emplace_back(ids);
    override_profile = std::move(profile);
  }

  const std::int64_t total_tasks = static_cast<std::int64_t>(cells.size()) * config.trials;
  std::vector<TrialResult> results(static_cast<std::size_t>(total_tasks));
  std::atomic<std::int64_t> next_task{0};

  auto worker = [&]() {
    while (true) {
      const std::int64_t task = next_task.fetch_add(1);
      if (task >= total_tasks) return;
      const std::int64_t cell_idx = task / config.trials;
      const std::int64_t trial = task % config.trials;
      const CellSpec& cell = cells[static_cast<std::size_t>(cell_idx)];
      TrialResult& result = results[static_cast<std::size_t>(task)];
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const std::uint64_t trial_seed = derive_seed(config.base_seed, static_cast<std::uint64_t>(cell_idx),
                                                     static_cast<std::uint64_t>(trial));
        PerturbationSpec pspec{cell.phi, config.family, derive_seed(trial_seed, kPerturbLabel)};
        const Game realized = perturb(skeleton, pspec);
        const StrategyProfile start =
            override_profile ? *override_profile
                             : make_start_profile(realized, config.start_policy,
                                                  derive_seed(trial_seed, kStartLabel));
        BrdConfig bc;
        bc.epsilon = cell.epsilon;
        bc.pivot_rule = cell.pivot;
        bc.seed = derive_seed(trial_seed, kBrdLabel);
        const RunTrace trace = run_brd(realized, start, bc);
        result.iterations = trace.iterations;
        result.converged = trace.status == RunStatus::Converged;
        result.cap_ok = static_cast<double>(trace.iterations) <= iteration_cap(realized, cell.epsilon);
      } catch (const BoundViolationError& e) {
        result.error = e.what();
        result.bound_error = true;
      } catch (const std::exception& e) {
        result.error = e.what();
      }
      result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Surface hard trial failures in deterministic (task index) order.
  for (std::int64_t task = 0; task < total_tasks; ++task) {
    const auto& r = results[static_cast<std::size_t>(task)];
    if (!r.error.empty()) {
      const std::string what = "cell " + std::to_string(task / config.trials) + " trial " +
                               std::to_string(task % config.trials) + ": " + r.error;
      if (r.bound_error) throw BoundViolationError(what);
      throw ValidationError(what);
    }
  }

  report.ok = true;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellResult cr;
    cr.phi = cells[c].phi;
    cr.epsilon = cells[c].epsilon;
    cr.pivot = cells[c].pivot;
    query.epsilon = cells[c].epsilon;
    query.phi = cells[c].phi;
    cr.smoothed_bound = iteration_bound(query).smoothed_bound;

    McAccumulator acc;
    cr.cap_conformant = true;
    cr.all_converged = true;
    for (int t = 0; t < config.trials; ++t) {
      const auto& r = results[c * static_cast<std::size_t>(config.trials) + static_cast<std::size_t>(t)];
      cr.trial_iterations.push_back(r.iterations);
      acc.add(static_cast<double>(r.iterations));
      cr.max_iterations = std::max(cr.max_iterations, r.iterations);
      cr.cap_conformant = cr.cap_conformant && r.cap_ok;
      cr.all_converged = cr.all_converged && r.converged;
      cr.wall_clock_seconds += r.seconds;
    }
    cr.mean_iterations = acc.mean();
    cr.stddev_iterations = std::sqrt(acc.sample_variance());
    cr.mean_to_bound_ratio = cr.mean_iterations / cr.smoothed_bound;
    if (!cr.cap_conformant || !cr.all_converged || !(cr.mean_to_bound_ratio <= 1.0)) report.ok = false;
    report.cells.push_back(std::move(cr));
  }

  report.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
  return report;
}

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "model,n,m,phi,epsilon,pivot,trials,mean_T,stddev_T,max_T,eq9_conformant,smoothed_bound,"
         "mean_to_bound_ratio\n";
  for (const CellResult& c : report.cells) {
    out << model_kind_name(report.model) << ',' << report.n << ',' << report.m << ','
        << format_double(c.phi) << ',' << format_double(c.epsilon) << ',' << pivot_rule_name(c.pivot)
        << ',' << c.trial_iterations.size() << ',' << format_double(c.mean_iterations) << ','
        << format_double(c.stddev_iterations) << ',' << c.max_iterations << ','
        << (c.cap_conformant && c.all_converged ? "true" : "false") << ','
        << format_double(c.smoothed_bound) << ',' << format_double(c.mean_to_bound_ratio) << '\n';
  }
  return out.str();
}

json report_to_json(const ExperimentReport& report, const ExperimentConfig& config) {
  json cells = json::array();
  for (const CellResult& c : report.cells) {
    json cell;
    cell["phi"] = c.phi;
    cell["epsilon"] = c.epsilon;
    cell["pivot"] = std::string(pivot_rule_name(c.pivot));
    cell["trials"] = c.trial_iterations.size();
    cell["mean_T"] = c.mean_iterations;
    cell["stddev_T"] = c.stddev_iterations;
    cell["max_T"] = c.max_iterations;
    cell["eq9_conformant"] = c.cap_conformant;
    cell["all_converged"] = c.all_converged;
    cell["smoothed_bound"] = c.smoothed_bound;
    cell["mean_to_bound_ratio"] = c.mean_to_bound_ratio;
    cell["trial_iterations"] = c.trial_iterations;
    cells.push_back(std::move(cell));
  }
  json doc;
  doc["version"] = 1;
  doc["config"] = config.echo;
  doc["model"] = std::string(model_kind_name(report.model));
  doc["n"] = report.n;
  doc["m"] = report.m;
  doc["ok"] = report.ok;
  doc["cells"] = std::move(cells);
  return doc;
}

void write_report_files(const ExperimentReport& report, const ExperimentConfig& config,
                        const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_text_file(out_dir / "report.csv", report_to_csv(report));
  write_text_file(out_dir / "report.json", report_to_json(report, config).dump(2) + "\n");
}

int default_thread_count() {
  if (const char* env = std::getenv("BRDLAB_THREADS")) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(env, env + std::string_view(env).size(), value);
    if (ec == std::errc() && value >= 1) return value;
  }
  return 1;
}

}  // namespace brdlab
