#include "formats.hpp"

#include <algorithm>
#include <cctype>

#include "error.hpp"

namespace sstar::formats {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) fail(ErrorCode::Parse, "document: expected an object");
  auto it = j.find(name);
  if (it == j.end()) fail(ErrorCode::Parse, std::string("document: missing field '") + name + "'");
  return *it;
}

template <typename T>
T get(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorCode::Parse, std::string("document: field '") + what + "' has the wrong type");
  }
}

template <typename T>
T get_field(const Json& j, const char* name) {
  return get<T>(field(j, name), name);
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::Parse, std::string("json: ") + e.what());
  }
}

Player parse_player(std::string_view s) {
  const std::string l = lower(s);
  if (l == "left" || l == "alloff") return Player::Left;
  if (l == "right" || l == "oneon") return Player::Right;
  fail(ErrorCode::Parse, "unknown player '" + std::string(s) + "'");
}

epmx::Side parse_side(std::string_view s) {
  const std::string l = lower(s);
  if (l == "x" || l == "left") return epmx::Side::X;
  if (l == "y" || l == "right") return epmx::Side::Y;
  fail(ErrorCode::Parse, "unknown EPMX side '" + std::string(s) + "'");
}

// -------------------------------------------------------------------- EPMX

EpmxDocument epmx_from_json(const Json& j) {
  EpmxDocument doc;
  auto& inst = doc.instance;
  const Json& vars = field(j, "variables");
  if (!vars.is_array()) fail(ErrorCode::Parse, "epmx: 'variables' must be an array");
  for (const Json& v : vars) {
    epmx::Variable var;
    var.name = get_field<std::string>(v, "name");
    var.owner = parse_side(get_field<std::string>(v, "owner"));
    var.states = get_field<std::vector<std::string>>(v, "states");
    inst.variables.push_back(std::move(var));
  }
  const Json& clauses = field(j, "clauses");
  if (!clauses.is_array()) fail(ErrorCode::Parse, "epmx: 'clauses' must be an array");
  for (const Json& c : clauses) {
    auto pairs = get<std::vector<std::pair<std::string, std::string>>>(c, "clauses");
    epmx::Clause clause;
    for (const auto& [name, state] : pairs) {
      auto v = inst.find_variable(name);
      if (!v) fail(ErrorCode::Parse, "epmx: clause names unknown variable '" + name + "'");
      auto s = inst.find_state(*v, state);
      if (!s) fail(ErrorCode::Parse, "epmx: variable '" + name + "' has no state '" + state + "'");
      clause.push_back({*v, *s});
    }
    inst.clauses.push_back(std::move(clause));
  }
  if (auto it = j.find("firstPlayer"); it != j.end() && !it->is_null()) {
    doc.first_player = parse_side(get<std::string>(*it, "firstPlayer"));
  }
  inst.validate();
  return doc;
}

Json to_json(const epmx::Instance& inst, std::optional<epmx::Side> first) {
  Json vars = Json::array();
  for (const auto& v : inst.variables) {
    vars.push_back({{"name", v.name}, {"owner", std::string(epmx::to_string(v.owner))}, {"states", v.states}});
  }
  Json clauses = Json::array();
  for (const auto& c : inst.clauses) {
    Json clause = Json::array();
    for (const auto& l : c) {
      const auto& var = inst.variables.at(l.variable);
      clause.push_back({var.name, var.states.at(l.state)});
    }
    clauses.push_back(std::move(clause));
  }
  Json out = {{"variables", std::move(vars)}, {"clauses", std::move(clauses)}};
  if (first) out["firstPlayer"] = std::string(epmx::to_string(*first));
  return out;
}

Json assignment_to_json(const epmx::Instance& inst, const epmx::Assignment& a) {
  Json out = Json::object();
  for (std::size_t v = 0; v < inst.variables.size() && v < a.size(); ++v) {
    if (a[v]) out[inst.variables[v].name] = inst.variables[v].states.at(*a[v]);
  }
  return out;
}

// --------------------------------------------------------------- set cover

reductions::SetCoverInstance setcover_from_json(const Json& j) {
  reductions::SetCoverInstance sc;
  sc.element_count = get_field<std::size_t>(j, "elements");
  sc.k = get_field<std::size_t>(j, "k");
  sc.sets = get_field<std::vector<std::vector<std::size_t>>>(j, "sets");
  for (auto& s : sc.sets) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      fail(ErrorCode::Parse, "set cover: repeated element inside a set");
    }
  }
  sc.validate();
  return sc;
}

Json to_json(const reductions::SetCoverInstance& sc) {
  return {{"elements", sc.element_count}, {"sets", sc.sets}, {"k", sc.k}};
}

// ---------------------------------------------------------------- Blackout

blackout::Position blackout_from_json(const Json& j) {
  blackout::Position pos;
  const auto count = get_field<std::size_t>(j, "lightCount");
  pos.lights = blackout::parse_bits(get_field<std::string>(j, "lights"));
  if (pos.lights.size() != count) fail(ErrorCode::Parse, "blackout: 'lights' length differs from 'lightCount'");
  for (const auto& r : get_field<std::vector<std::string>>(j, "allOff")) pos.all_off.push_back(blackout::parse_bits(r));
  for (const auto& r : get_field<std::vector<std::string>>(j, "oneOn")) pos.one_on.push_back(blackout::parse_bits(r));
  pos.pass_budget = get_field<std::uint64_t>(j, "passBudget");
  pos.to_move = parse_player(get_field<std::string>(j, "toMove"));
  pos.validate();
  return pos;
}

Json to_json(const blackout::Position& pos) {
  Json all_off = Json::array(), one_on = Json::array();
  for (const auto& r : pos.all_off) all_off.push_back(blackout::to_string(r));
  for (const auto& r : pos.one_on) one_on.push_back(blackout::to_string(r));
  return {{"lightCount", pos.light_count()},
          {"lights", blackout::to_string(pos.lights)},
          {"allOff", std::move(all_off)},
          {"oneOn", std::move(one_on)},
          {"passBudget", pos.pass_budget},
          {"toMove", std::string(blackout::role_name(pos.to_move))}};
}

blackout::Move blackout_move_from_json(const Json& j, const blackout::Position& pos) {
  const std::string kind = lower(get_field<std::string>(j, "kind"));
  if (kind == "pass") return blackout::Move::pass();
  if (kind != "switch") fail(ErrorCode::Parse, "blackout move: kind must be 'switch' or 'pass'");
  blackout::Move m;
  m.side = pos.to_move;
  if (auto it = j.find("side"); it != j.end()) m.side = parse_player(get<std::string>(*it, "side"));
  m.row = get_field<std::size_t>(j, "row");
  const Json& action = field(j, "action");
  if (action.is_boolean()) {
    m.action = action.get<bool>();
  } else {
    auto a = get<int>(action, "action");
    if (a != 0 && a != 1) fail(ErrorCode::Parse, "blackout move: action must be 0 or 1");
    m.action = a == 1;
  }
  return m;
}

Json to_json(const blackout::Move& m) {
  if (m.kind == blackout::Move::Kind::Pass) return {{"kind", "pass"}, {"side", "OneOn"}};
  return {{"kind", "switch"},
          {"side", std::string(blackout::role_name(m.side))},
          {"row", m.row},
          {"action", m.action ? 1 : 0}};
}

// --------------------------------------------------------------- Paint Can

paintcan::BrickMove paintcan_move_from_json(const Json& j) {
  return {get_field<std::size_t>(j, "stack"), get_field<std::size_t>(j, "brick")};
}

Json to_json(const paintcan::BrickMove& m) { return {{"stack", m.stack}, {"brick", m.brick}}; }

}  // namespace sstar::formats
