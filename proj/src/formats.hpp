#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "blackout.hpp"
#include "epmx.hpp"
#include "paintcan.hpp"
#include "reductions.hpp"

// Structured-document codecs. Field names are documented in docs/formats.md;
// every parse_* validates and throws Error(Parse) on malformed input.
namespace sstar::formats {

using Json = nlohmann::json;

/// Parses text as JSON, mapping syntax errors to Error(Parse).
Json parse_json(std::string_view text);

struct EpmxDocument {
  epmx::Instance instance;
  std::optional<epmx::Side> first_player;
};

EpmxDocument epmx_from_json(const Json& j);
Json to_json(const epmx::Instance& inst, std::optional<epmx::Side> first = std::nullopt);
/// {"x1": "b", ...}; unassigned variables are omitted.
Json assignment_to_json(const epmx::Instance& inst, const epmx::Assignment& a);

reductions::SetCoverInstance setcover_from_json(const Json& j);
Json to_json(const reductions::SetCoverInstance& sc);

blackout::Position blackout_from_json(const Json& j);
Json to_json(const blackout::Position& pos);
blackout::Move blackout_move_from_json(const Json& j, const blackout::Position& pos);
Json to_json(const blackout::Move& m);

paintcan::BrickMove paintcan_move_from_json(const Json& j);
Json to_json(const paintcan::BrickMove& m);

/// "left"/"right" in any case, plus the Blackout role names.
Player parse_player(std::string_view s);
epmx::Side parse_side(std::string_view s);

}  // namespace sstar::formats
