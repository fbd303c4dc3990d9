#include "brdlab/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "brdlab/errors.hpp"
#include "brdlab/game.hpp"

namespace brdlab {

namespace {

constexpr int kMaxPolyDegree = 8;

std::string res_label(int r) { return "resource " + std::to_string(r + 1); }

double int_pow(double base, int exp) {
  double v = 1.0;
  for (int i = 0; i < exp; ++i) v *= base;
  return v;
}

}  // namespace

ModelKind model_kind(const CostModel& model) {
  return static_cast<ModelKind>(model.index());
}

std::string_view model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Tabular: return "tabular";
    case ModelKind::StepFunction: return "step";
    case ModelKind::Polynomial: return "polynomial";
    case ModelKind::CostSharing: return "cost_sharing";
  }
  return "?";
}

ModelKind model_kind_from_name(std::string_view name) {
  if (name == "tabular") return ModelKind::Tabular;
  if (name == "step") return ModelKind::StepFunction;
  if (name == "polynomial") return ModelKind::Polynomial;
  if (name == "cost_sharing") return ModelKind::CostSharing;
  throw ValidationError("unknown model kind: " + std::string(name));
}

double resource_cost(const CostModel& model, ResourceId r, int load, int n) {
  if (load < 1 || load > n) {
    throw ValidationError("load " + std::to_string(load) + " out of range [1, " + std::to_string(n) + "]");
  }
  if (r < 0) throw ValidationError("negative resource id");
  const auto ri = static_cast<std::size_t>(r);

  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, TabularCosts>) {
          if (ri >= m.table.size()) throw ValidationError(res_label(r) + ": no cost table");
          return m.table[ri][static_cast<std::size_t>(load) - 1];
        } else if constexpr (std::is_same_v<T, StepFunctionCosts>) {
          if (ri >= m.resources.size()) throw ValidationError(res_label(r) + ": no step costs");
          const StepResource& sr = m.resources[ri];
          double acc = 0.0;
          for (std::size_t j = 0; j < sr.breaks.size() && sr.breaks[j] <= load; ++j) acc += sr.jumps[j];
          return acc;
        } else if constexpr (std::is_same_v<T, PolynomialCosts>) {
          if (ri >= m.resources.size()) throw ValidationError(res_label(r) + ": no polynomial costs");
          const PolyResource& pr = m.resources[ri];
          double acc = 0.0;
          for (std::size_t j = 0; j < pr.support.size(); ++j) {
            acc += pr.coeffs[j] * int_pow(static_cast<double>(load), pr.support[j]);
          }
          return acc;
        } else {
          static_assert(std::is_same_v<T, CostSharingCosts>);
          if (ri >= m.fixed_costs.size()) throw ValidationError(res_label(r) + ": no fixed cost");
          return m.fixed_costs[ri] / static_cast<double>(load);
        }
      },
      model);
}

std::vector<std::string> validate_cost_model(const CostModel& model, int n, int m) {
  std::vector<std::string> out;
  auto bad = [&](const std::string& msg) { out.push_back(msg); };

  std::visit(
      [&](const auto& mod) {
        using T = std::decay_t<decltype(mod)>;
        if constexpr (std::is_same_v<T, TabularCosts>) {
          if (static_cast<int>(mod.table.size()) != m) {
            bad("tabular model has " + std::to_string(mod.table.size()) + " cost tables, expected " +
                std::to_string(m));
            return;
          }
          for (int r = 0; r < m; ++r) {
            const auto& row = mod.table[static_cast<std::size_t>(r)];
            if (static_cast<int>(row.size()) != n) {
              bad(res_label(r) + ": table covers " + std::to_string(row.size()) + " loads, expected " +
                  std::to_string(n));
              continue;
            }
            for (double v : row) {
              if (!(v >= 0.0 && v <= 1.0)) {
                bad(res_label(r) + ": table entry " + std::to_string(v) + " outside [0,1]");
                break;
              }
            }
          }
        } else if constexpr (std::is_same_v<T, StepFunctionCosts>) {
          if (static_cast<int>(mod.resources.size()) != m) {
            bad("step model has " + std::to_string(mod.resources.size()) + " resources, expected " +
                std::to_string(m));
            return;
          }
          for (int r = 0; r < m; ++r) {
            const StepResource& sr = mod.resources[static_cast<std::size_t>(r)];
            if (sr.breaks.empty()) {
              bad(res_label(r) + ": no break points");
              continue;
            }
            if (sr.breaks.size() != sr.jumps.size()) {
              bad(res_label(r) + ": break/jump count mismatch");
              continue;
            }
            if (sr.breaks.front() != 1) bad(res_label(r) + ": first break point must be 1");
            for (std::size_t j = 1; j < sr.breaks.size(); ++j) {
              if (sr.breaks[j] <= sr.breaks[j - 1]) {
                bad(res_label(r) + ": break points not strictly increasing");
                break;
              }
            }
            if (sr.breaks.back() > n) bad(res_label(r) + ": break point exceeds player count");
            for (double a : sr.jumps) {
              if (!(a > 0.0 && a <= 1.0)) {
                bad(res_label(r) + ": jump " + std::to_string(a) + " outside (0,1]");
                break;
              }
            }
          }
        } else if constexpr (std::is_same_v<T, PolynomialCosts>) {
          if (mod.degree < 0 || mod.degree > kMaxPolyDegree) {
            bad("polynomial degree " + std::to_string(mod.degree) + " outside [0, " +
                std::to_string(kMaxPolyDegree) + "]");
          }
          if (static_cast<int>(mod.resources.size()) != m) {
            bad("polynomial model has " + std::to_string(mod.resources.size()) + " resources, expected " +
                std::to_string(m));
            return;
          }
          for (int r = 0; r < m; ++r) {
            const PolyResource& pr = mod.resources[static_cast<std::size_t>(r)];
            if (pr.support.empty()) {
              bad(res_label(r) + ": empty support (cost would be identically zero)");
              continue;
            }
            if (pr.support.size() != pr.coeffs.size()) {
              bad(res_label(r) + ": support/coefficient count mismatch");
              continue;
            }
            for (std::size_t j = 0; j < pr.support.size(); ++j) {
              if (pr.support[j] < 0 || pr.support[j] > mod.degree) {
                bad(res_label(r) + ": exponent " + std::to_string(pr.support[j]) + " outside [0, " +
                    std::to_string(mod.degree) + "]");
              }
              if (j > 0 && pr.support[j] <= pr.support[j - 1]) {
                bad(res_label(r) + ": support indices not strictly increasing");
              }
              if (!(pr.coeffs[j] > 0.0 && pr.coeffs[j] <= 1.0)) {
                bad(res_label(r) + ": coefficient " + std::to_string(pr.coeffs[j]) + " outside (0,1]");
              }
            }
          }
        } else {
          static_assert(std::is_same_v<T, CostSharingCosts>);
          if (static_cast<int>(mod.fixed_costs.size()) != m) {
            bad("cost-sharing model has " + std::to_string(mod.fixed_costs.size()) +
                " fixed costs, expected " + std::to_string(m));
            return;
          }
          for (int r = 0; r < m; ++r) {
            const double a = mod.fixed_costs[static_cast<std::size_t>(r)];
            if (!(a > 0.0 && a <= 1.0)) bad(res_label(r) + ": fixed cost " + std::to_string(a) + " outside (0,1]");
          }
        }
      },
      model);
  return out;
}

namespace {

template <typename Fn>
void for_each_parameter(const CostModel& model, Fn&& fn) {
  std::visit(
      [&](const auto& mod) {
        using T = std::decay_t<decltype(mod)>;
        if constexpr (std::is_same_v<T, TabularCosts>) {
          for (const auto& row : mod.table)
            for (double v : row) fn(v);
        } else if constexpr (std::is_same_v<T, StepFunctionCosts>) {
          for (const auto& sr : mod.resources)
            for (double a : sr.jumps) fn(a);
        } else if constexpr (std::is_same_v<T, PolynomialCosts>) {
          for (const auto& pr : mod.resources)
            for (double a : pr.coeffs) fn(a);
        } else {
          for (double a : mod.fixed_costs) fn(a);
        }
      },
      model);
}

}  // namespace

double max_parameter(const CostModel& model) {
  double best = 0.0;
  for_each_parameter(model, [&](double v) { best = std::max(best, v); });
  return best;
}

double min_parameter(const CostModel& model) {
  double best = std::numeric_limits<double>::infinity();
  for_each_parameter(model, [&](double v) { best = std::min(best, v); });
  return std::isfinite(best) ? best : 0.0;
}

double harmonic_number(int n) {
  double h = 0.0;
  for (int j = 1; j <= n; ++j) h += 1.0 / static_cast<double>(j);
  return h;
}

CostTable::CostTable(const CostModel& model, int n, int m) : n_(n), m_(m) {
  cost_.assign(static_cast<std::size_t>(m) * (n + 1), 0.0);
  prefix_.assign(static_cast<std::size_t>(m) * (n + 1), 0.0);
  for (int r = 0; r < m; ++r) {
    const std::size_t base = static_cast<std::size_t>(r) * (n + 1);
    double acc = 0.0;
    for (int load = 1; load <= n; ++load) {
      const double c = resource_cost(model, r, load, n);
      cost_[base + static_cast<std::size_t>(load)] = c;
      acc += c;
      prefix_[base + static_cast<std::size_t>(load)] = acc;
    }
  }
}

double potential_upper_bound(const Game& game) {
  return std::visit(
      [&](const auto& mod) -> double {
        using T = std::decay_t<decltype(mod)>;
        const double n = game.n;
        const double m = game.m;
        if constexpr (std::is_same_v<T, TabularCosts>) {
          return n * m * max_parameter(game.cost_model);
        } else if constexpr (std::is_same_v<T, StepFunctionCosts>) {
          return n * mod.total_breaks() * max_parameter(game.cost_model);
        } else if constexpr (std::is_same_v<T, PolynomialCosts>) {
          return mod.total_terms() * int_pow(n, mod.degree + 1) * max_parameter(game.cost_model);
        } else {
          return m * harmonic_number(game.n) * max_parameter(game.cost_model);
        }
      },
      game.cost_model);
}

double min_cost_lower_bound(const Game& game) {
  if (max_parameter(game.cost_model) == 0.0) {
    throw ValidationError("degenerate cost model: every parameter is zero");
  }
  const double p = min_parameter(game.cost_model);
  if (std::holds_alternative<CostSharingCosts>(game.cost_model)) {
    return p / static_cast<double>(game.n);
  }
  return p;
}

}  // namespace brdlab
