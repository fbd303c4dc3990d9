#include "brdlab/io.hpp"

#include <fstream>
#include <sstream>

#include "brdlab/errors.hpp"

namespace brdlab {

using nlohmann::json;

namespace {

const json& require_field(const json& doc, const char* key, const char* where) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    throw ValidationError(std::string(where) + ": missing field \"" + key + "\"");
  }
  return *it;
}

int require_int(const json& doc, const char* key, const char* where) {
  const json& v = require_field(doc, key, where);
  if (!v.is_number_integer()) {
    throw ValidationError(std::string(where) + ": field \"" + key + "\" must be an integer");
  }
  return v.get<int>();
}

std::vector<double> as_double_vec(const json& v, const std::string& where) {
  if (!v.is_array()) throw ValidationError(where + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) throw ValidationError(where + ": expected a number");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<int> as_int_vec(const json& v, const std::string& where) {
  if (!v.is_array()) throw ValidationError(where + ": expected an array of integers");
  std::vector<int> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number_integer()) throw ValidationError(where + ": expected an integer");
    out.push_back(x.get<int>());
  }
  return out;
}

json cost_params_to_json(const CostModel& model) {
  json out;
  std::visit(
      [&](const auto& mod) {
        using T = std::decay_t<decltype(mod)>;
        if constexpr (std::is_same_v<T, TabularCosts>) {
          out["table"] = mod.table;
        } else if constexpr (std::is_same_v<T, StepFunctionCosts>) {
          json breaks = json::array();
          json jumps = json::array();
          for (const auto& sr : mod.resources) {
            breaks.push_back(sr.breaks);
            jumps.push_back(sr.jumps);
          }
          out["breaks"] = std::move(breaks);
          out["jumps"] = std::move(jumps);
        } else if constexpr (std::is_same_v<T, PolynomialCosts>) {
          out["degree"] = mod.degree;
          json support = json::array();
          json coeffs = json::array();
          for (const auto& pr : mod.resources) {
            support.push_back(pr.support);
            coeffs.push_back(pr.coeffs);
          }
          out["support"] = std::move(support);
          out["coefficients"] = std::move(coeffs);
        } else {
          out["fixed_costs"] = mod.fixed_costs;
        }
      },
      model);
  return out;
}

CostModel cost_params_from_json(ModelKind kind, const json& params) {
  switch (kind) {
    case ModelKind::Tabular: {
      TabularCosts model;
      const json& table = require_field(params, "table", "cost_params");
      if (!table.is_array()) throw ValidationError("cost_params.table: expected an array");
      for (std::size_t r = 0; r < table.size(); ++r) {
        model.table.push_back(as_double_vec(table[r], "cost_params.table[" + std::to_string(r) + "]"));
      }
      return model;
    }
    case ModelKind::StepFunction: {
      StepFunctionCosts model;
      const json& breaks = require_field(params, "breaks", "cost_params");
      const json& jumps = require_field(params, "jumps", "cost_params");
      if (!breaks.is_array() || !jumps.is_array() || breaks.size() != jumps.size()) {
        throw ValidationError("cost_params: breaks and jumps must be arrays of equal length");
      }
      for (std::size_t r = 0; r < breaks.size(); ++r) {
        StepResource sr;
        sr.breaks = as_int_vec(breaks[r], "cost_params.breaks[" + std::to_string(r) + "]");
        sr.jumps = as_double_vec(jumps[r], "cost_params.jumps[" + std::to_string(r) + "]");
        model.resources.push_back(std::move(sr));
      }
      return model;
    }
    case ModelKind::Polynomial: {
      PolynomialCosts model;
      model.degree = require_int(params, "degree", "cost_params");
      const json& support = require_field(params, "support", "cost_params");
      const json& coeffs = require_field(params, "coefficients", "cost_params");
      if (!support.is_array() || !coeffs.is_array() || support.size() != coeffs.size()) {
        throw ValidationError("cost_params: support and coefficients must be arrays of equal length");
      }
      for (std::size_t r = 0; r < support.size(); ++r) {
        PolyResource pr;
        pr.support = as_int_vec(support[r], "cost_params.support[" + std::to_string(r) + "]");
        pr.coeffs = as_double_vec(coeffs[r], "cost_params.coefficients[" + std::to_string(r) + "]");
        model.resources.push_back(std::move(pr));
      }
      return model;
    }
    case ModelKind::CostSharing: {
      CostSharingCosts model;
      model.fixed_costs = as_double_vec(require_field(params, "fixed_costs", "cost_params"),
                                        "cost_params.fixed_costs");
      return model;
    }
  }
  throw ValidationError("unknown model kind");
}

}  // namespace

json instance_to_json(const Game& game) {
  json doc;
  doc["version"] = kInstanceFormatVersion;
  doc["model"] = std::string(model_kind_name(model_kind(game.cost_model)));
  doc["n"] = game.n;
  doc["m"] = game.m;
  doc["cost_params"] = cost_params_to_json(game.cost_model);
  if (game.is_network()) {
    const NetworkSpec& net = game.network();
    json jnet;
    jnet["nodes"] = net.node_count;
    json edges = json::array();
    for (const auto& e : net.edges) edges.push_back(json::array({e.tail, e.head}));
    jnet["edges"] = std::move(edges);
    json ods = json::array();
    for (const auto& [o, d] : net.od_pairs) ods.push_back(json::array({o, d}));
    jnet["od_pairs"] = std::move(ods);
    doc["network"] = std::move(jnet);
  } else {
    json players = json::array();
    for (const auto& set : game.explicit_sets()) {
      json strategies = json::array();
      for (const Strategy& s : set) strategies.push_back(s.resources());
      players.push_back(std::move(strategies));
    }
    doc["strategies"] = std::move(players);
  }
  return doc;
}

Game instance_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("instance: expected a JSON object");
  const int version = require_int(doc, "version", "instance");
  if (version != kInstanceFormatVersion) {
    throw ValidationError("instance: unsupported format version " + std::to_string(version) +
                          " (supported: " + std::to_string(kInstanceFormatVersion) + ")");
  }
  const json& model_name = require_field(doc, "model", "instance");
  if (!model_name.is_string()) throw ValidationError("instance: field \"model\" must be a string");
  const ModelKind kind = model_kind_from_name(model_name.get<std::string>());

  Game game;
  game.n = require_int(doc, "n", "instance");
  game.m = require_int(doc, "m", "instance");
  game.cost_model = cost_params_from_json(kind, require_field(doc, "cost_params", "instance"));

  const bool has_strategies = doc.contains("strategies");
  const bool has_network = doc.contains("network");
  if (has_strategies == has_network) {
    throw ValidationError("instance: exactly one of \"strategies\" or \"network\" is required");
  }
  if (has_network) {
    const json& jnet = doc["network"];
    NetworkSpec net;
    net.node_count = require_int(jnet, "nodes", "network");
    const json& edges = require_field(jnet, "edges", "network");
    if (!edges.is_array()) throw ValidationError("network.edges: expected an array");
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto pair = as_int_vec(edges[e], "network.edges[" + std::to_string(e) + "]");
      if (pair.size() != 2) {
        throw ValidationError("network.edges[" + std::to_string(e) + "]: expected [tail, head]");
      }
      net.edges.push_back({pair[0], pair[1]});
    }
    const json& ods = require_field(jnet, "od_pairs", "network");
    if (!ods.is_array()) throw ValidationError("network.od_pairs: expected an array");
    for (std::size_t i = 0; i < ods.size(); ++i) {
      const auto pair = as_int_vec(ods[i], "network.od_pairs[" + std::to_string(i) + "]");
      if (pair.size() != 2) {
        throw ValidationError("network.od_pairs[" + std::to_string(i) + "]: expected [origin, destination]");
      }
      net.od_pairs.emplace_back(pair[0], pair[1]);
    }
    game.strategies = std::move(net);
  } else {
    const json& players = doc["strategies"];
    if (!players.is_array()) throw ValidationError("strategies: expected an array per player");
    ExplicitStrategies sets;
    for (std::size_t i = 0; i < players.size(); ++i) {
      const json& jset = players[i];
      if (!jset.is_array()) {
        throw ValidationError("strategies[" + std::to_string(i) + "]: expected an array of strategies");
      }
      std::vector<Strategy> set;
      for (std::size_t k = 0; k < jset.size(); ++k) {
        auto ids = as_int_vec(jset[k], "strategies[" + std::to_string(i) + "][" + std::to_string(k) + "]");
        set.emplace_back(std::vector<ResourceId>(ids.begin(), ids.end()));
      }
      sets.push_back(std::move(set));
    }
    game.strategies = std::move(sets);
  }

  validate_game_or_throw(game);
  return game;
}

void save_instance(const Game& game, const std::filesystem::path& path) {
  write_text_file(path, instance_to_json(game).dump(2) + "\n");
}

Game load_instance(const std::filesystem::path& path) { return instance_from_json(parse_json_file(path)); }

json profile_to_json(const StrategyProfile& profile) {
  json choices = json::array();
  for (const Strategy& s : profile.choices) choices.push_back(s.resources());
  return json{{"choices", std::move(choices)}};
}

StrategyProfile profile_from_json(const json& doc, const Game& game) {
  const json& choices = require_field(doc, "choices", "profile");
  if (!choices.is_array()) throw ValidationError("profile.choices: expected an array per player");
  StrategyProfile profile;
  for (std::size_t i = 0; i < choices.size(); ++i) {
    auto ids = as_int_vec(choices[i], "profile.choices[" + std::to_string(i) + "]");
    profile.choices.emplace_back(std::vector<ResourceId>(ids.begin(), ids.end()));
  }
  validate_profile(game, profile);
  return profile;
}

StrategyProfile load_profile(const std::filesystem::path& path, const Game& game) {
  return profile_from_json(parse_json_file(path), game);
}

json parse_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path.string());
  out << text;
}

}  // namespace brdlab
