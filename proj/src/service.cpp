#include "service.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <thread>

#include <httplib.h>

#include "error.hpp"
#include "superstar.hpp"

namespace sstar::service {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool is_blackout(const RulesetState& st) { return std::holds_alternative<blackout::Position>(st); }

Player to_move(const RulesetState& st) {
  if (const auto* p = std::get_if<PaintCanState>(&st)) return p->to_move;
  return std::get<blackout::Position>(st).to_move;
}

std::string side_name(const RulesetState& st, Player p) {
  if (is_blackout(st)) return std::string(blackout::role_name(p));
  return std::string(to_string(p));
}

Json legal_moves_json(const RulesetState& st) {
  Json out = Json::array();
  if (const auto* p = std::get_if<PaintCanState>(&st)) {
    for (const auto& m : paintcan::legal_moves(p->position, p->to_move)) out.push_back(formats::to_json(m));
  } else {
    for (const auto& m : blackout::legal_moves(std::get<blackout::Position>(st))) out.push_back(formats::to_json(m));
  }
  return out;
}

Json position_json(const RulesetState& st) {
  if (const auto* p = std::get_if<PaintCanState>(&st)) return paintcan::to_text(p->position);
  return formats::to_json(std::get<blackout::Position>(st));
}

/// The player who cannot move, if the game is over.
std::optional<Player> stuck(const RulesetState& st) {
  if (const auto* p = std::get_if<PaintCanState>(&st)) {
    if (paintcan::legal_moves(p->position, p->to_move).empty()) return p->to_move;
    return std::nullopt;
  }
  return blackout::loser_if_stuck(std::get<blackout::Position>(st));
}

RulesetState apply_json(const RulesetState& st, const Json& move) {
  if (const auto* p = std::get_if<PaintCanState>(&st)) {
    auto m = formats::paintcan_move_from_json(move);
    return PaintCanState{paintcan::apply_move(p->position, p->to_move, m), opponent(p->to_move)};
  }
  const auto& pos = std::get<blackout::Position>(st);
  return blackout::apply_move(pos, formats::blackout_move_from_json(move, pos));
}

// Normalized creation request; also the persisted form.
struct Creation {
  std::string ruleset;
  RulesetState initial;
  Player human;
  std::optional<std::uint64_t> ai_budget;
};

Creation parse_creation(const Json& request) {
  if (!request.is_object()) fail(ErrorCode::Parse, "invalid-position: request must be an object");
  if (!request.contains("ruleset") || !request["ruleset"].is_string()) {
    fail(ErrorCode::Parse, "invalid-position: missing 'ruleset'");
  }
  Creation c;
  c.ruleset = lower(request["ruleset"].get<std::string>());
  if (!request.contains("position")) fail(ErrorCode::Parse, "invalid-position: missing 'position'");
  const Json& pos = request["position"];
  if (c.ruleset == "paintcan") {
    if (!pos.is_string()) fail(ErrorCode::Parse, "invalid-position: Paint Can position must be a string");
    PaintCanState st{paintcan::parse_position(pos.get<std::string>()), Player::Left};
    if (request.contains("toMove")) st.to_move = formats::parse_player(request["toMove"].get<std::string>());
    c.initial = st;
  } else if (c.ruleset == "blackout") {
    c.initial = formats::blackout_from_json(pos);
  } else {
    fail(ErrorCode::Parse, "invalid-position: unknown ruleset '" + c.ruleset + "'");
  }
  c.human = Player::Left;
  if (request.contains("humanSide")) c.human = formats::parse_player(request["humanSide"].get<std::string>());
  if (request.contains("aiBudget")) c.ai_budget = request["aiBudget"].get<std::uint64_t>();
  return c;
}

Json creation_json(const std::string& id, const Creation& c) {
  Json j = {{"event", "create"},
            {"id", id},
            {"ruleset", c.ruleset},
            {"position", position_json(c.initial)},
            {"humanSide", to_string(c.human)}};
  if (!is_blackout(c.initial)) j["toMove"] = to_string(to_move(c.initial));
  if (c.ai_budget) j["aiBudget"] = *c.ai_budget;
  return j;
}

// --------------------------------------------------------------- the engine

EngineMove paintcan_engine(const PaintCanState& st, std::uint64_t budget) {
  const auto legal = paintcan::legal_moves(st.position, st.to_move);
  auto brick_move = [&](std::size_t stack, std::uint64_t brick) -> std::optional<Json> {
    paintcan::BrickMove m{stack, static_cast<std::size_t>(brick)};
    if (std::find(legal.begin(), legal.end(), m) == legal.end()) return std::nullopt;
    return formats::to_json(m);
  };

  const auto terms = paintcan::position_terms(st.position);
  if (zero_game_win_applies(terms, st.to_move)) {
    StarMove sm = zero_game_win_move(terms, st.to_move);
    if (auto m = brick_move(sm.component, sm.result.value)) return {*m, "strategy", false};
  }

  // Map sum components back to stacks; zero terms are dropped by SumPosition.
  SumPosition sum;
  std::vector<std::size_t> stack_of;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    Component c = std::visit([](const auto& v) { return Component(v); }, terms[i]);
    if (c.is_zero()) continue;
    sum.add(c);
    stack_of.push_back(i);
  }
  try {
    Solver solver({.node_budget = budget});
    if (auto w = solver.winning_move(sum, st.to_move)) {
      if (auto n = w->result.nimber()) {
        if (auto m = brick_move(stack_of.at(w->component), n->value)) return {*m, "minimax", false};
      }
    }
    return {formats::to_json(legal.front()), "minimax", false};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
  }
  return {formats::to_json(legal.front()), "heuristic", true};
}

EngineMove blackout_engine(const blackout::Position& pos, std::uint64_t budget) {
  const auto legal = blackout::legal_moves(pos);
  try {
    blackout::Solver solver({.node_budget = budget});
    if (auto m = solver.winning_move(pos)) return {formats::to_json(*m), "minimax", false};
    return {formats::to_json(legal.front()), "minimax", false};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
  }
  // Heuristic: AllOff flips a row from a clearing combination when one exists.
  if (pos.to_move == blackout::kAllOff) {
    if (auto subset = blackout::gf2_solve(pos.lights, pos.all_off); subset && !subset->empty()) {
      return {formats::to_json(blackout::Move{blackout::Move::Kind::Switch, blackout::kAllOff, subset->front(), true}),
              "heuristic", true};
    }
  }
  return {formats::to_json(legal.front()), "heuristic", true};
}

}  // namespace

EngineMove engine_move(const RulesetState& state, std::uint64_t budget) {
  if (stuck(state)) fail(ErrorCode::Precondition, "precondition-violated: the game is over");
  if (const auto* p = std::get_if<PaintCanState>(&state)) return paintcan_engine(*p, budget);
  return blackout_engine(std::get<blackout::Position>(state), budget);
}

// -------------------------------------------------------------- the service

GameService::GameService(ServiceOptions options) : options_(std::move(options)) {
  if (!options_.persist_path) return;
  const auto& path = *options_.persist_path;
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      Json event = formats::parse_json(line);
      const std::string id = event.at("id").get<std::string>();
      if (event.at("event") == "create") {
        open(id, event);
        if (id.size() > 1 && id[0] == 'g') {
          next_id_ = std::max<std::uint64_t>(next_id_, std::stoull(id.substr(1)) + 1);
        }
      } else {
        auto s = find(id);
        play(*s, event.at("move"), event.value("ai", false));
      }
    }
  }
  log_.open(path, std::ios::app);
  if (!log_) fail(ErrorCode::Io, "cannot open session log " + path);
}

std::shared_ptr<GameService::Session> GameService::find(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) fail(ErrorCode::NotFound, "unknown-session: " + id);
  return it->second;
}

std::shared_ptr<GameService::Session> GameService::open(const std::string& id, const Json& request) {
  Creation c = parse_creation(request);
  auto s = std::make_shared<Session>();
  s->id = id;
  s->ruleset = c.ruleset;
  s->initial = c.initial;
  s->current = c.initial;
  s->human = c.human;
  s->ai_budget = c.ai_budget.value_or(options_.ai_budget);
  if (auto loser = stuck(s->current)) s->winner = opponent(*loser);
  std::unique_lock lock(sessions_mutex_);
  sessions_[id] = s;
  return s;
}

std::size_t GameService::session_count() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

void GameService::log(const Json& event) {
  if (!log_.is_open()) return;
  std::lock_guard lock(log_mutex_);
  log_ << event.dump() << '\n';
  log_.flush();
}

Json GameService::create(const Json& request) {
  Creation c = parse_creation(request);
  std::string id;
  {
    std::unique_lock lock(sessions_mutex_);
    id = "g" + std::to_string(next_id_++);
  }
  Json normalized = creation_json(id, c);
  auto s = open(id, normalized);
  log(normalized);
  std::lock_guard lock(s->mutex);
  ai_turns(*s);
  return snapshot(*s);
}

void GameService::play(Session& s, const Json& move, bool by_ai) {
  if (s.winner) fail(ErrorCode::IllegalMove, "game-finished: session " + s.id + " is over");
  const Player mover = to_move(s.current);
  RulesetState next = apply_json(s.current, move);
  // Store the move in canonical form.
  Json canonical;
  if (is_blackout(s.current)) {
    canonical = formats::to_json(formats::blackout_move_from_json(move, std::get<blackout::Position>(s.current)));
  } else {
    canonical = formats::to_json(formats::paintcan_move_from_json(move));
  }
  s.current = std::move(next);
  s.history.push_back({by_ai, mover, canonical});
  if (auto loser = stuck(s.current)) s.winner = opponent(*loser);
  log({{"event", "move"}, {"id", s.id}, {"ai", by_ai}, {"move", canonical}});
}

void GameService::ai_turns(Session& s) {
  while (!s.winner && to_move(s.current) != s.human) {
    EngineMove m = engine_move(s.current, s.ai_budget);
    s.approximate = m.approximate;
    play(s, m.move, true);
  }
}

Json GameService::snapshot(const Session& s) const {
  Json history = Json::array();
  for (const auto& h : s.history) {
    history.push_back({{"by", h.by_ai ? "ai" : "human"}, {"side", side_name(s.current, h.side)}, {"move", h.move}});
  }
  const bool human_turn = !s.winner && to_move(s.current) == s.human;
  Json out = {{"id", s.id},
              {"ruleset", s.ruleset},
              {"position", position_json(s.current)},
              {"toMove", side_name(s.current, to_move(s.current))},
              {"humanSide", side_name(s.current, s.human)},
              {"legalMoves", human_turn ? legal_moves_json(s.current) : Json::array()},
              {"status", s.winner ? "finished" : "ongoing"},
              {"winner", s.winner ? Json(side_name(s.current, *s.winner)) : Json()},
              {"history", std::move(history)},
              {"approximate", s.approximate}};
  return out;
}

Json GameService::state(const std::string& id) const {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  return snapshot(*s);
}

Json GameService::post_move(const std::string& id, const Json& move) {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  if (s->winner) fail(ErrorCode::IllegalMove, "game-finished: session " + id + " is over");
  if (to_move(s->current) != s->human) fail(ErrorCode::IllegalMove, "out-of-turn: it is not the human's turn");
  play(*s, move, false);
  ai_turns(*s);
  return snapshot(*s);
}

Json GameService::hint(const std::string& id) const {
  auto s = find(id);
  RulesetState current;
  std::uint64_t budget = 0;
  {
    std::lock_guard lock(s->mutex);
    if (s->winner) fail(ErrorCode::IllegalMove, "game-finished: session " + id + " is over");
    current = s->current;
    budget = s->ai_budget;
  }
  EngineMove m = engine_move(current, budget);
  return {{"side", side_name(current, to_move(current))},
          {"move", m.move},
          {"source", m.source},
          {"approximate", m.approximate}};
}

Json GameService::replay(const std::string& id) const {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  RulesetState st = s->initial;
  for (const auto& h : s->history) st = apply_json(st, h.move);
  return position_json(st);
}

Json GameService::reduce(const std::string& kind, const Json& input) const {
  namespace r = reductions;
  auto dimacs = [&] {
    if (!input.is_object() || !input.contains("dimacs") || !input["dimacs"].is_string()) {
      fail(ErrorCode::Parse, "reduce: expected {\"dimacs\": \"p cnf ...\"}");
    }
    return r::parse_dimacs(input["dimacs"].get<std::string>());
  };
  auto star_terms = [&] {
    if (!input.is_object() || !input.contains("sum") || !input["sum"].is_string()) {
      fail(ErrorCode::Parse, "reduce: expected {\"sum\": \"...\"}");
    }
    return parse_star_sum(input["sum"].get<std::string>());
  };

  Json output;
  if (kind == "normalize-3sat") {
    output = {{"dimacs", r::to_dimacs(r::normalize_3sat(dimacs()))}};
  } else if (kind == "3sat-to-epmx") {
    output = formats::to_json(r::threesat_to_epmx(dimacs()), epmx::Side::X);
  } else if (kind == "epmx-to-stars") {
    output = {{"sum", to_text(r::epmx_to_superstars(formats::epmx_from_json(input).instance).terms())}};
  } else if (kind == "epmx-to-paintcan") {
    paintcan::Position pos;
    for (const auto& t : r::epmx_to_superstars(formats::epmx_from_json(input).instance).terms()) {
      pos.stacks.push_back(paintcan::superstar_to_stack(t));
    }
    output = {{"position", paintcan::to_text(pos)}};
  } else if (kind == "stars-to-comets") {
    const auto terms = star_terms();
    CometSum c = r::superstars_to_comets(terms);
    output = {{"upCount", c.up_count}, {"starParity", c.star_parity}, {"sum", to_text(c.parts)}};
  } else if (kind == "setcover-to-pure") {
    output = formats::to_json(r::setcover_to_pure(formats::setcover_from_json(input)));
  } else if (kind == "pure-to-blackout") {
    output = formats::to_json(r::pure_setcover_to_blackout(formats::setcover_from_json(input)));
  } else if (kind == "setcover-to-blackout") {
    output = formats::to_json(r::pure_setcover_to_blackout(r::setcover_to_pure(formats::setcover_from_json(input))));
  } else {
    fail(ErrorCode::NotFound, "unknown reduction '" + kind + "'");
  }
  return {{"kind", kind}, {"output", std::move(output)}};
}

// ------------------------------------------------------------------- HTTP

namespace {

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return 400;
    case ErrorCode::NotFound: return 404;
    case ErrorCode::IllegalMove: return 409;
    case ErrorCode::Precondition:
    case ErrorCode::BudgetExceeded: return 422;
    case ErrorCode::Io: return 500;
  }
  return 500;
}

template <typename F>
void respond(httplib::Response& res, F&& f) {
  try {
    Json body = f();
    res.status = 200;
    res.set_content(body.dump(), "application/json");
  } catch (const Error& e) {
    res.status = http_status(e.code());
    res.set_content(Json{{"error", error_name(e.code())}, {"message", e.what()}}.dump(), "application/json");
  } catch (const nlohmann::json::exception& e) {
    res.status = 400;
    res.set_content(Json{{"error", "parse-error"}, {"message", e.what()}}.dump(), "application/json");
  }
}

void configure(httplib::Server& svr, GameService& service, const std::optional<std::string>& static_dir) {
  svr.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    respond(res, [] { return Json{{"status", "ok"}}; });
  });
  svr.Post("/games", [&service](const httplib::Request& req, httplib::Response& res) {
    respond(res, [&] { return service.create(formats::parse_json(req.body)); });
  });
  svr.Get(R"(/games/([^/]+))", [&service](const httplib::Request& req, httplib::Response& res) {
    respond(res, [&] { return service.state(req.matches[1]); });
  });
  svr.Post(R"(/games/([^/]+)/moves)", [&service](const httplib::Request& req, httplib::Response& res) {
    respond(res, [&] { return service.post_move(req.matches[1], formats::parse_json(req.body)); });
  });
  svr.Get(R"(/games/([^/]+)/hint)", [&service](const httplib::Request& req, httplib::Response& res) {
    respond(res, [&] { return service.hint(req.matches[1]); });
  });
  svr.Post(R"(/reduce/([A-Za-z0-9-]+))", [&service](const httplib::Request& req, httplib::Response& res) {
    respond(res, [&] { return service.reduce(req.matches[1], formats::parse_json(req.body)); });
  });
  if (static_dir && !svr.set_mount_point("/", *static_dir)) {
    fail(ErrorCode::Io, "static directory not found: " + *static_dir);
  }
}

}  // namespace

void serve(GameService& service, const ServerOptions& options) {
  httplib::Server svr;
  configure(svr, service, options.static_dir);
  if (!svr.listen(options.host, options.port)) {
    fail(ErrorCode::Io, "cannot listen on " + options.host + ":" + std::to_string(options.port));
  }
}

struct BackgroundServer::Impl {
  httplib::Server svr;
  std::thread thread;
};

BackgroundServer::BackgroundServer(GameService& service, std::optional<std::string> static_dir)
    : impl_(std::make_unique<Impl>()) {
  configure(impl_->svr, service, static_dir);
  port_ = impl_->svr.bind_to_any_port("127.0.0.1");
  if (port_ <= 0) fail(ErrorCode::Io, "cannot bind a loopback port");
  impl_->thread = std::thread([this] { impl_->svr.listen_after_bind(); });
  impl_->svr.wait_until_ready();
}

BackgroundServer::~BackgroundServer() {
  impl_->svr.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace sstar::service
