#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
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

namespace py = pybind11;

namespace {

using Choices = std::vector<std::vector<brdlab::ResourceId>>;

brdlab::StrategyProfile to_profile(const Choices& choices) {
  brdlab::StrategyProfile profile;
  profile.choices.reserve(choices.size());
  for (const auto& ids : choices) profile.choices.emplace_back(ids);
  return profile;
}

Choices from_profile(const brdlab::StrategyProfile& profile) {
  Choices out;
  out.reserve(profile.choices.size());
  for (const auto& s : profile.choices) out.push_back(s.resources());
  return out;
}

brdlab::PhiSmoothFamily make_family(const std::string& kind, double phi, double center) {
  brdlab::PhiSmoothFamily family;
  family.kind = brdlab::family_kind_from_name(kind);
  family.phi = phi;
  family.center = center;
  return family;
}

py::dict trace_to_dict(const brdlab::RunTrace& trace) {
  py::list moves;
  for (const auto& mv : trace.moves) {
    py::dict m;
    m["player"] = mv.player;
    m["from"] = mv.from_strategy.resources();
    m["to"] = mv.to_strategy.resources();
    m["cost_before"] = mv.cost_before;
    m["cost_after"] = mv.cost_after;
    m["potential_after"] = mv.potential_after;
    moves.append(std::move(m));
  }
  py::dict out;
  out["status"] = trace.status == brdlab::RunStatus::Converged ? "converged" : "iteration_cap_hit";
  out["iterations"] = trace.iterations;
  out["start_profile"] = from_profile(trace.start_profile);
  out["final_profile"] = from_profile(trace.final_profile);
  out["start_potential"] = trace.start_potential;
  out["final_potential"] = trace.final_potential;
  out["moves"] = std::move(moves);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Better-response dynamics for congestion games under phi-smooth perturbations";

  py::register_exception<brdlab::ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<brdlab::BoundViolationError>(m, "BoundViolationError", PyExc_RuntimeError);
  py::register_exception<brdlab::BudgetExceededError>(m, "BudgetExceededError", PyExc_RuntimeError);

  py::class_<brdlab::Game>(m, "Game")
      .def_property_readonly("n", [](const brdlab::Game& g) { return g.n; })
      .def_property_readonly("m", [](const brdlab::Game& g) { return g.m; })
      .def_property_readonly("model",
                             [](const brdlab::Game& g) {
                               return std::string(brdlab::model_kind_name(brdlab::model_kind(g.cost_model)));
                             })
      .def_property_readonly("is_network", [](const brdlab::Game& g) { return g.is_network(); })
      .def("__repr__", [](const brdlab::Game& g) {
        return "Game(model=" + std::string(brdlab::model_kind_name(brdlab::model_kind(g.cost_model))) +
               ", n=" + std::to_string(g.n) + ", m=" + std::to_string(g.m) + ")";
      });

  // Construction and serialization.
  m.def(
      "tabular_game",
      [](int n, int m, const std::vector<std::vector<double>>& table,
         const std::vector<std::vector<std::vector<brdlab::ResourceId>>>& strategies) {
        brdlab::Game game;
        game.n = n;
        game.m = m;
        game.cost_model = brdlab::TabularCosts{table};
        brdlab::ExplicitStrategies sets;
        for (const auto& per_player : strategies) {
          std::vector<brdlab::Strategy> set;
          for (const auto& ids : per_player) set.emplace_back(ids);
          sets.push_back(std::move(set));
        }
        game.strategies = std::move(sets);
        brdlab::validate_game_or_throw(game);
        return game;
      },
      py::arg("n"), py::arg("m"), py::arg("table"), py::arg("strategies"),
      "Explicit game with per-load cost tables (table[r][load-1]).");
  m.def("game_from_json",
        [](const std::string& text) { return brdlab::instance_from_json(nlohmann::json::parse(text)); });
  m.def("game_to_json", [](const brdlab::Game& g) { return brdlab::instance_to_json(g).dump(2); });
  m.def("load_instance", [](const std::string& path) { return brdlab::load_instance(path); });
  m.def("save_instance",
        [](const brdlab::Game& g, const std::string& path) { brdlab::save_instance(g, path); });
  m.def("validate_game", &brdlab::validate_game);
  m.def(
      "generate_skeleton",
      [](const std::string& model, int n, int m, int strategies_per_player, int max_strategy_size,
         int total_breaks, int degree, std::uint64_t seed) {
        brdlab::GeneratorSpec spec;
        spec.model = brdlab::model_kind_from_name(model);
        spec.n = n;
        spec.m = m;
        spec.strategies_per_player = strategies_per_player;
        spec.max_strategy_size = max_strategy_size;
        spec.total_breaks = total_breaks;
        spec.degree = degree;
        spec.seed = seed;
        return brdlab::generate_skeleton(spec);
      },
      py::arg("model"), py::arg("n"), py::arg("m"), py::arg("strategies_per_player") = 3,
      py::arg("max_strategy_size") = 3, py::arg("total_breaks") = 0, py::arg("degree") = 2,
      py::arg("seed") = 0);

  // Core operations.
  m.def("compute_loads", [](const brdlab::Game& g, const Choices& p) {
    return brdlab::compute_loads(g, to_profile(p)).loads;
  });
  m.def("player_cost", [](const brdlab::Game& g, const Choices& p, int i) {
    return brdlab::player_cost(g, to_profile(p), i);
  });
  m.def("potential",
        [](const brdlab::Game& g, const Choices& p) { return brdlab::potential(g, to_profile(p)); });
  m.def("potential_difference_check",
        [](const brdlab::Game& g, const Choices& p, int i, const std::vector<brdlab::ResourceId>& dev) {
          return brdlab::potential_difference_check(g, to_profile(p), i, brdlab::Strategy(dev));
        });
  m.def("potential_upper_bound", &brdlab::potential_upper_bound);
  m.def("min_cost_lower_bound", &brdlab::min_cost_lower_bound);

  // Dynamics.
  m.def("is_alpha_pne", [](const brdlab::Game& g, const Choices& p, double alpha) {
    return brdlab::is_alpha_pne(g, to_profile(p), alpha);
  });
  m.def("is_alpha_improving",
        [](const brdlab::Game& g, const Choices& p, int i, const std::vector<brdlab::ResourceId>& dev,
           double alpha) {
          return brdlab::is_alpha_improving(g, to_profile(p), i, brdlab::Strategy(dev), alpha);
        });
  m.def("best_response", [](const brdlab::Game& g, const Choices& p, int i) {
    return brdlab::best_response(g, to_profile(p), i).resources();
  });
  m.def(
      "run_brd",
      [](const brdlab::Game& g, const Choices& start, double epsilon, const std::string& pivot,
         std::int64_t max_iterations, std::uint64_t seed) {
        brdlab::BrdConfig config;
        config.epsilon = epsilon;
        config.pivot_rule = brdlab::pivot_rule_from_name(pivot);
        config.max_iterations = max_iterations;
        config.seed = seed;
        return trace_to_dict(brdlab::run_brd(g, to_profile(start), config));
      },
      py::arg("game"), py::arg("start"), py::arg("epsilon"), py::arg("pivot") = "first_improvement",
      py::arg("max_iterations") = 0, py::arg("seed") = 0);
  m.def("iteration_cap", &brdlab::iteration_cap);

  // Network queries.
  m.def("network_best_response", [](const brdlab::Game& g, const Choices& p, int i) {
    const auto br = brdlab::network_best_response(g, to_profile(p), i);
    return py::make_tuple(br.path.edges, br.cost);
  });
  m.def(
      "enumerate_simple_paths",
      [](const brdlab::Game& g, int origin, int destination, std::int64_t cap) {
        std::vector<std::vector<brdlab::ResourceId>> out;
        for (const auto& path : brdlab::enumerate_simple_paths(g.network(), origin, destination, cap)) {
          out.push_back(path.edges);
        }
        return out;
      },
      py::arg("game"), py::arg("origin"), py::arg("destination"), py::arg("cap") = 10'000);

  // Smoothing.
  m.def(
      "perturb",
      [](const brdlab::Game& skeleton, double phi, const std::string& family, std::uint64_t seed) {
        brdlab::PerturbationSpec spec;
        spec.phi = phi;
        spec.family = brdlab::family_kind_from_name(family);
        spec.seed = seed;
        return brdlab::perturb(skeleton, spec);
      },
      py::arg("skeleton"), py::arg("phi"), py::arg("family") = "uniform_window", py::arg("seed") = 0);
  m.def(
      "phi_smooth_samples",
      [](const std::string& kind, double phi, double center, std::int64_t count, std::uint64_t seed) {
        const auto family = make_family(kind, phi, center);
        brdlab::CounterRng rng(seed);
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(count));
        for (std::int64_t i = 0; i < count; ++i) out.push_back(brdlab::sample_phi_smooth(family, rng));
        return out;
      },
      py::arg("kind"), py::arg("phi"), py::arg("center") = 0.0, py::arg("count") = 1,
      py::arg("seed") = 0);

  // Oracle.
  m.def(
      "brute_force_min_potential",
      [](const brdlab::Game& g, std::int64_t max_profiles, std::int64_t max_paths) {
        brdlab::EnumerationBudget budget{max_profiles, max_paths};
        const auto [profile, value] = brdlab::brute_force_min_potential(g, budget);
        return py::make_tuple(from_profile(profile), value);
      },
      py::arg("game"), py::arg("max_profiles") = 1'000'000, py::arg("max_paths") = 10'000);
  m.def(
      "brute_force_is_alpha_pne",
      [](const brdlab::Game& g, const Choices& p, double alpha, std::int64_t max_profiles,
         std::int64_t max_paths) {
        brdlab::EnumerationBudget budget{max_profiles, max_paths};
        return brdlab::brute_force_is_alpha_pne(g, to_profile(p), alpha, budget);
      },
      py::arg("game"), py::arg("profile"), py::arg("alpha"), py::arg("max_profiles") = 1'000'000,
      py::arg("max_paths") = 10'000);
  m.def(
      "enumerate_profiles",
      [](const brdlab::Game& g, std::int64_t max_profiles, std::int64_t max_paths) {
        brdlab::EnumerationBudget budget{max_profiles, max_paths};
        brdlab::ProfileEnumerator en(g, budget);
        std::vector<Choices> out;
        brdlab::StrategyProfile profile;
        while (en.next(profile)) out.push_back(from_profile(profile));
        return out;
      },
      py::arg("game"), py::arg("max_profiles") = 1'000'000, py::arg("max_paths") = 10'000);

  // Bound calculators and the Monte-Carlo estimator.
  m.def(
      "lemma_bound_rhs",
      [](std::int64_t mu, double alpha, double beta, double phi) {
        return brdlab::lemma_bound_rhs({mu, alpha, beta, phi});
      },
      py::arg("mu"), py::arg("alpha"), py::arg("beta"), py::arg("phi"));
  m.def(
      "lemma_mc_estimate",
      [](std::int64_t mu, double alpha, double beta, double phi, const std::string& family, double center,
         std::int64_t trials, std::uint64_t seed) {
        const auto est = brdlab::lemma_mc_estimate({mu, alpha, beta, phi},
                                                   make_family(family, phi, center), trials, seed);
        return py::make_tuple(est.mean, est.stderr_);
      },
      py::arg("mu"), py::arg("alpha"), py::arg("beta"), py::arg("phi"), py::arg("family") = "uniform_low",
      py::arg("center") = 0.5, py::arg("trials") = 100'000, py::arg("seed") = 0);
  m.def(
      "iteration_bound",
      [](const std::string& model, int n, int m, double epsilon, double phi, int total_breaks, int degree,
         int total_terms) {
        brdlab::BoundQuery q;
        q.model = brdlab::model_kind_from_name(model);
        q.n = n;
        q.m = m;
        q.epsilon = epsilon;
        q.phi = phi;
        q.total_breaks = total_breaks;
        q.degree = degree;
        q.total_terms = total_terms;
        const auto b = brdlab::iteration_bound(q);
        return py::make_tuple(b.exhaustive_cap, b.smoothed_bound);
      },
      py::arg("model"), py::arg("n"), py::arg("m"), py::arg("epsilon"), py::arg("phi"),
      py::arg("total_breaks") = 0, py::arg("degree") = 0, py::arg("total_terms") = 0);
  m.def("eq9_realized_cap", &brdlab::eq9_realized_cap, py::arg("n"), py::arg("m"), py::arg("epsilon"),
        py::arg("min_cost"));

  // Batch experiments (writes report.csv / report.json under out_dir).
  m.def(
      "run_experiment",
      [](const std::string& config_path, const std::string& out_dir, int threads) {
        const auto config = brdlab::load_experiment_config(config_path);
        const auto report = brdlab::run_experiment(config, threads);
        brdlab::write_report_files(report, config, out_dir);
        return report.ok;
      },
      py::arg("config_path"), py::arg("out_dir"), py::arg("threads") = 1);
}
