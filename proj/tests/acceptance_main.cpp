// Acceptance suite: end-to-end checks of the engine's guarantees at desk
// scale. Each criterion prints one PASS/FAIL line; the binary exits nonzero
// if any criterion fails.
//
// Usage: acceptance [path-to-cli-binary]
// The CLI path enables the byte-level determinism check of criterion 8; it
// is skipped (and fails) if the binary is missing.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "brdlab/brd.hpp"
#include "brdlab/errors.hpp"
#include "brdlab/experiment.hpp"
#include "brdlab/generator.hpp"
#include "brdlab/io.hpp"
#include "brdlab/lemma.hpp"
#include "brdlab/oracle.hpp"
#include "brdlab/smoothing.hpp"

namespace fs = std::filesystem;
using namespace brdlab;

namespace {

int g_failures = 0;

class Criterion {
 public:
  Criterion(int index, std::string name) : index_(index), name_(std::move(name)) {
    start_ = std::chrono::steady_clock::now();
  }

  void fail(const std::string& why) {
    ok_ = false;
    if (messages_.size() < 5) messages_.push_back(why);
    ++failure_count_;
  }

  void expect(bool condition, const std::string& why) {
    if (!condition) fail(why);
  }

  ~Criterion() {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::ostringstream line;
    line << (ok_ ? "[PASS]" : "[FAIL]") << " C" << index_ << " " << name_ << "  (" << std::fixed
         << std::setprecision(1) << seconds << " s)";
    std::cout << line.str() << '\n';
    for (const auto& msg : messages_) std::cout << "        " << msg << '\n';
    if (!ok_ && failure_count_ > messages_.size()) {
      std::cout << "        ... " << failure_count_ << " failing checks total\n";
    }
    if (!ok_) ++g_failures;
  }

 private:
  int index_;
  std::string name_;
  bool ok_ = true;
  std::size_t failure_count_ = 0;
  std::vector<std::string> messages_;
  std::chrono::steady_clock::time_point start_;
};

ModelKind kind_of(int index) {
  switch (index % 4) {
    case 0: return ModelKind::Tabular;
    case 1: return ModelKind::StepFunction;
    case 2: return ModelKind::Polynomial;
    default: return ModelKind::CostSharing;
  }
}

Game random_enumerable_instance(ModelKind kind, std::uint64_t seed, int max_n, int max_m,
                                std::int64_t profile_budget) {
  CounterRng rng(derive_seed(seed, 0x61636365ULL));
  for (int attempt = 0;; ++attempt) {
    GeneratorSpec spec;
    spec.model = kind;
    spec.n = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_n)));
    spec.m = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_m)));
    spec.strategies_per_player = 2 + static_cast<int>(rng.next_below(3));
    spec.max_strategy_size = 1 + static_cast<int>(rng.next_below(3));
    spec.total_breaks =
        spec.m + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(spec.m * std::max(1, spec.n - 1)) + 1));
    spec.degree = 1 + static_cast<int>(rng.next_below(3));
    spec.seed = rng.next_u64();
    Game game = generate_skeleton(spec);
    double profiles = 1.0;
    for (const auto& set : game.explicit_sets()) profiles *= static_cast<double>(set.size());
    if (profiles <= static_cast<double>(profile_budget)) return game;
    if (attempt > 200) throw std::runtime_error("cannot generate an enumerable instance");
  }
}

StrategyProfile random_profile(const Game& game, CounterRng& rng) {
  StrategyProfile p;
  for (int i = 0; i < game.n; ++i) {
    const auto& set = game.explicit_sets()[static_cast<std::size_t>(i)];
    p.choices.push_back(set[static_cast<std::size_t>(rng.next_below(set.size()))]);
  }
  return p;
}

std::string cell_label(ModelKind kind, double phi, double eps, PivotRule rule) {
  std::ostringstream out;
  out << model_kind_name(kind) << " phi=" << phi << " eps=" << eps << " " << pivot_rule_name(rule);
  return out.str();
}

// --- C1: exact potential-difference identity -------------------------------

void criterion_1() {
  Criterion c(1, "potential difference equals deviator cost difference (1000+ triples/model)");
  for (int model = 0; model < 4; ++model) {
    CounterRng rng(derive_seed(100, static_cast<std::uint64_t>(model)));
    for (int it = 0; it < 1000; ++it) {
      const Game game = random_enumerable_instance(kind_of(model), rng.next_u64(), 10, 10, 1'000'000'000);
      const StrategyProfile p = random_profile(game, rng);
      const int i = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(game.n)));
      const auto& set = game.explicit_sets()[static_cast<std::size_t>(i)];
      const Strategy& deviation = set[static_cast<std::size_t>(rng.next_below(set.size()))];
      const auto [d_phi, d_cost] = potential_difference_check(game, p, i, deviation);
      c.expect(std::abs(d_phi - d_cost) <= 1e-9,
               "identity off by " + std::to_string(std::abs(d_phi - d_cost)));
    }
  }
}

// --- C2: minimizers of the potential are exact equilibria ------------------

void criterion_2() {
  Criterion c(2, "potential minimizer is an exact PNE (500 instances/model)");
  for (int model = 0; model < 4; ++model) {
    CounterRng rng(derive_seed(200, static_cast<std::uint64_t>(model)));
    for (int it = 0; it < 500; ++it) {
      const Game game = random_enumerable_instance(kind_of(model), rng.next_u64(), 6, 6, 10'000);
      const auto [minimizer, value] = brute_force_min_potential(game, {});
      c.expect(brute_force_is_alpha_pne(game, minimizer, 1.0, {}),
               std::string(model_kind_name(kind_of(model))) + ": minimizer not an exact PNE");
    }
  }
}

// --- C3: dynamics correctness on perturbed instances ------------------------

void criterion_3() {
  Criterion c(3, "BRD converges, is oracle-certified, and obeys the realized cap (500/model)");
  const double epsilons[] = {0.05, 0.2, 1.0};
  const PivotRule rules[] = {PivotRule::FirstImprovement, PivotRule::BestResponsePivot,
                             PivotRule::MaxGain, PivotRule::RandomImproving};
  const double phis[] = {1.0, 5.0, 10.0};

  for (int model = 0; model < 4; ++model) {
    CounterRng rng(derive_seed(300, static_cast<std::uint64_t>(model)));
    for (int it = 0; it < 500; ++it) {
      const Game skeleton = random_enumerable_instance(kind_of(model), rng.next_u64(), 6, 6, 10'000);
      PerturbationSpec pspec;
      pspec.phi = phis[it % 3];
      pspec.family = (it % 2 == 0) ? FamilyKind::UniformLow : FamilyKind::UniformWindow;
      pspec.seed = rng.next_u64();
      const Game game = perturb(skeleton, pspec);
      const StrategyProfile start = random_profile(game, rng);

      for (double eps : epsilons) {
        const double cap = iteration_cap(game, eps);
        for (PivotRule rule : rules) {
          BrdConfig config;
          config.epsilon = eps;
          config.pivot_rule = rule;
          config.seed = rng.next_u64();
          const RunTrace trace = run_brd(game, start, config);
          if (trace.status != RunStatus::Converged) {
            c.fail("run hit the iteration cap");
            continue;
          }
          c.expect(brute_force_is_alpha_pne(game, trace.final_profile, 1.0 + eps, {}),
                   "final profile rejected by the oracle");
          c.expect(static_cast<double>(trace.iterations) <= cap, "realized-instance cap violated");
          double prev = trace.start_potential;
          bool monotone = true;
          for (const Move& mv : trace.moves) {
            monotone = monotone && mv.potential_after < prev;
            prev = mv.potential_after;
          }
          c.expect(monotone, "potential not strictly decreasing");
        }
      }
    }
  }
}

// --- C4: Monte-Carlo estimates sit below the expectation bound -------------

void criterion_4() {
  Criterion c(4, "MC mean <= phi*alpha*(beta+1)*mu*ln(mu)+1 over the parameter grid");
  const std::int64_t trials = 100'000;
  int cells = 0;
  for (std::int64_t mu : {2, 8, 32, 128}) {
    for (double alpha : {1.0, 4.0}) {
      for (double beta : {0.0, 1.0, 2.0}) {
        for (double phi : {1.0, 2.0, 10.0}) {
          const LemmaParams params{mu, alpha, beta, phi};
          const PhiSmoothFamily family{FamilyKind::UniformLow, phi, 0.0};
          const auto est = lemma_mc_estimate(params, family, trials,
                                             derive_seed(400, static_cast<std::uint64_t>(cells)));
          const double rhs = lemma_bound_rhs(params);
          std::ostringstream label;
          label << "mu=" << mu << " alpha=" << alpha << " beta=" << beta << " phi=" << phi;
          c.expect(est.mean - 3.0 * est.stderr_ <= rhs, label.str() + ": mean exceeds bound at 3 stderr");
          c.expect(est.mean <= rhs, label.str() + ": mean exceeds bound outright");
          ++cells;
        }
      }
    }
  }
  c.expect(cells == 72, "expected 72 grid cells");
}

// --- C5: stochastic dominance of the low-concentrated family ---------------

void criterion_5() {
  Criterion c(5, "uniform-low mean dominates the centered-window mean (paired MC)");
  for (double phi : {2.0, 10.0}) {
    for (std::int64_t mu : {8, 32}) {
      for (double alpha : {1.0, 4.0}) {
        const LemmaParams params{mu, alpha, 2.0, phi};
        const std::uint64_t seed = derive_seed(500, static_cast<std::uint64_t>(mu), static_cast<std::uint64_t>(phi));
        const auto low = lemma_mc_estimate(params, {FamilyKind::UniformLow, phi, 0.0}, 100'000, seed);
        const auto window = lemma_mc_estimate(params, {FamilyKind::UniformWindow, phi, 0.5}, 100'000, seed);
        const double slack = 3.0 * std::sqrt(low.stderr_ * low.stderr_ + window.stderr_ * window.stderr_);
        std::ostringstream label;
        label << "phi=" << phi << " mu=" << mu << " alpha=" << alpha;
        c.expect(low.mean >= window.mean - slack, label.str() + ": dominance direction violated");
      }
    }
  }
}

// --- C6: empirical iteration counts below the smoothed bound ---------------

void criterion_6() {
  Criterion c(6, "mean T <= closed-form smoothed bound (200 perturbed trials/cell)");

  struct CellSetup {
    ModelKind model;
    int n, m;
    GeneratorSpec spec;
  };
  std::vector<CellSetup> setups;

  {
    GeneratorSpec g;
    g.model = ModelKind::Tabular;
    g.n = 8;
    g.m = 8;
    g.strategies_per_player = 4;
    g.max_strategy_size = 3;
    g.seed = 601;
    setups.push_back({g.model, g.n, g.m, g});
  }
  {
    GeneratorSpec g;
    g.model = ModelKind::StepFunction;
    g.n = 6;
    g.m = 6;
    g.strategies_per_player = 4;
    g.max_strategy_size = 3;
    g.total_breaks = 8;
    g.seed = 602;
    setups.push_back({g.model, g.n, g.m, g});
  }
  {
    GeneratorSpec g;
    g.model = ModelKind::Polynomial;
    g.n = 6;
    g.m = 6;
    g.strategies_per_player = 4;
    g.max_strategy_size = 3;
    g.degree = 2;
    g.seed = 603;
    setups.push_back({g.model, g.n, g.m, g});
  }
  {
    GeneratorSpec g;
    g.model = ModelKind::CostSharing;
    g.n = 6;
    g.m = 6;
    g.strategies_per_player = 4;
    g.max_strategy_size = 3;
    g.seed = 604;
    setups.push_back({g.model, g.n, g.m, g});
  }

  const double eps = 0.1;
  for (const auto& setup : setups) {
    const Game skeleton = generate_skeleton(setup.spec);
    BoundQuery query;
    query.model = setup.model;
    query.n = skeleton.n;
    query.m = skeleton.m;
    query.epsilon = eps;
    if (const auto* step = std::get_if<StepFunctionCosts>(&skeleton.cost_model)) {
      query.total_breaks = step->total_breaks();
    }
    if (const auto* poly = std::get_if<PolynomialCosts>(&skeleton.cost_model)) {
      query.degree = poly->degree;
      query.total_terms = poly->total_terms();
    }
    for (double phi : {1.0, 10.0}) {
      query.phi = phi;
      const double bound = iteration_bound(query).smoothed_bound;
      double total_t = 0.0;
      for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t seed = derive_seed(600, static_cast<std::uint64_t>(setup.model),
                                               static_cast<std::uint64_t>(phi), static_cast<std::uint64_t>(trial));
        const Game game = perturb(skeleton, {phi, FamilyKind::UniformLow, seed});
        const StrategyProfile start =
            make_start_profile(game, {StartPolicyKind::RandomUniform, 1}, derive_seed(seed, 1));
        BrdConfig config;
        config.epsilon = eps;
        config.pivot_rule = PivotRule::BestResponsePivot;
        config.seed = derive_seed(seed, 2);
        const RunTrace trace = run_brd(game, start, config);
        if (trace.status != RunStatus::Converged) c.fail("run hit the iteration cap");
        total_t += static_cast<double>(trace.iterations);
      }
      const double mean_t = total_t / 200.0;
      c.expect(mean_t <= bound, cell_label(setup.model, phi, eps, PivotRule::BestResponsePivot) +
                                    ": mean " + std::to_string(mean_t) + " above bound " +
                                    std::to_string(bound));
    }
  }
}

// --- C7: shortest-path best responses match path enumeration ---------------

void criterion_7() {
  Criterion c(7, "network best responses equal enumerated minima; BRD ends oracle-certified (300 nets)");
  CounterRng rng(derive_seed(700, 0));
  for (int it = 0; it < 300; ++it) {
    const Game game = generate_network_skeleton(kind_of(it), 6, 10, 1 + static_cast<int>(rng.next_below(3)),
                                                2, rng.next_u64());
    const NetworkSpec& net = game.network();

    std::vector<std::vector<PathStrategy>> paths;
    StrategyProfile profile;
    for (int i = 0; i < game.n; ++i) {
      const auto& [o, d] = net.od_pairs[static_cast<std::size_t>(i)];
      paths.push_back(enumerate_simple_paths(net, o, d, 10'000));
      const auto& mine = paths.back();
      profile.choices.push_back(mine[static_cast<std::size_t>(rng.next_below(mine.size()))].to_strategy());
    }

    for (int i = 0; i < game.n; ++i) {
      const auto br = network_best_response(game, profile, i);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& path : paths[static_cast<std::size_t>(i)]) {
        StrategyProfile q = profile;
        q.choices[static_cast<std::size_t>(i)] = path.to_strategy();
        best = std::min(best, oracle_player_cost(game, q, i));
      }
      c.expect(std::abs(br.cost - best) <= 1e-9, "best-response cost differs from enumerated minimum");
    }

    const double eps = 0.2;
    BrdConfig config;
    config.epsilon = eps;
    config.pivot_rule = PivotRule::BestResponsePivot;
    config.seed = rng.next_u64();
    const RunTrace trace = run_brd(game, profile, config);
    c.expect(trace.status == RunStatus::Converged, "network run did not converge");
    c.expect(brute_force_is_alpha_pne(game, trace.final_profile, 1.0 + eps, {}),
             "network final profile rejected by the path-enumeration oracle");
  }
}

// --- C8: byte-identical reports through the CLI ----------------------------

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void criterion_8(const std::string& cli) {
  Criterion c(8, "run twice with the same config/seed: byte-identical reports, threads 1 vs 8");
  if (cli.empty() || !fs::exists(cli)) {
    c.fail("CLI binary not provided; pass its path as argv[1]");
    return;
  }

  const fs::path dir = fs::current_path() / "acceptance_tmp";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path config_path = dir / "config.json";
  write_text_file(config_path, R"({
  "skeleton": {"generator": {"model": "step", "n": 4, "m": 4,
                             "strategies_per_player": 3, "max_strategy_size": 2,
                             "total_breaks": 6, "seed": 17}},
  "family": "uniform_window",
  "phi": [1, 10],
  "epsilon": [0.2],
  "pivot_rules": ["first_improvement", "random_improving"],
  "trials": 16,
  "base_seed": 7,
  "start_policy": {"kind": "adversarial_worst_of_k", "k": 4}
}
)");

  auto run_once = [&](const std::string& out_name, int threads) {
    std::ostringstream cmd;
    cmd << cli << " run --config " << config_path << " --out " << (dir / out_name) << " --threads "
        << threads << " > /dev/null 2>&1";
    return std::system(cmd.str().c_str());
  };

  c.expect(run_once("a", 1) == 0, "first run failed");
  c.expect(run_once("b", 1) == 0, "second run failed");
  c.expect(run_once("c", 8) == 0, "threaded run failed");

  const std::string csv_a = read_file(dir / "a" / "report.csv");
  c.expect(!csv_a.empty(), "empty report");
  c.expect(csv_a == read_file(dir / "b" / "report.csv"), "CSV bytes differ between identical runs");
  c.expect(csv_a == read_file(dir / "c" / "report.csv"), "CSV bytes differ between thread counts");
  c.expect(read_file(dir / "a" / "report.json") == read_file(dir / "b" / "report.json"),
           "JSON bytes differ between identical runs");
  c.expect(read_file(dir / "a" / "report.json") == read_file(dir / "c" / "report.json"),
           "JSON bytes differ between thread counts");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  try {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8(cli);
  } catch (const std::exception& e) {
    std::cerr << "acceptance suite aborted: " << e.what() << '\n';
    return 1;
  }
  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
