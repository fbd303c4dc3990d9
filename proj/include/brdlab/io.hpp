#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "brdlab/game.hpp"

namespace brdlab {

// JSON instance format, version 1. All indices are 0-based; doubles are
// serialized with shortest round-trip precision, so load(save(g)) is
// bit-exact.
//
// {
//   "version": 1,
//   "model": "tabular" | "step" | "polynomial" | "cost_sharing",
//   "n": <players>, "m": <resources>,
//   "cost_params": { ... model specific ... },
//   "strategies": [ [ [r, ...], ... ], ... ]            // explicit games
//   "network": { "nodes": V, "edges": [[tail, head], ...],
//                "od_pairs": [[o, d], ...] }             // network games
// }
inline constexpr int kInstanceFormatVersion = 1;

nlohmann::json instance_to_json(const Game& game);
Game instance_from_json(const nlohmann::json& doc);

void save_instance(const Game& game, const std::filesystem::path& path);
Game load_instance(const std::filesystem::path& path);

// Profile files: {"choices": [[r, ...], ...]} — one resource list per player
// (for network games the list is the path's edge set).
nlohmann::json profile_to_json(const StrategyProfile& profile);
StrategyProfile profile_from_json(const nlohmann::json& doc, const Game& game);
StrategyProfile load_profile(const std::filesystem::path& path, const Game& game);

nlohmann::json parse_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace brdlab
