#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <variant>
#include <vector>

#include "formats.hpp"

namespace sstar::service {

using formats::Json;

struct ServiceOptions {
  /// Default per-move node budget for the AI.
  std::uint64_t ai_budget = 2'000'000;
  /// Append-only event log; histories are replayed from it on startup.
  std::optional<std::string> persist_path;
};

struct PaintCanState {
  paintcan::Position position;
  Player to_move = Player::Left;
};

using RulesetState = std::variant<PaintCanState, blackout::Position>;

struct HistoryEntry {
  bool by_ai = false;
  Player side = Player::Left;
  Json move;
};

/// Game sessions with server-side rule enforcement and an AI opponent.
/// Documents in and out are JSON; see docs/formats.md.
class GameService {
 public:
  explicit GameService(ServiceOptions options = {});

  Json create(const Json& request);
  Json state(const std::string& id) const;
  Json post_move(const std::string& id, const Json& move);
  Json hint(const std::string& id) const;
  Json reduce(const std::string& kind, const Json& input) const;

  /// Position recomputed from the initial position and the stored history.
  Json replay(const std::string& id) const;

  std::size_t session_count() const;

 private:
  struct Session {
    mutable std::mutex mutex;
    std::string id;
    std::string ruleset;
    RulesetState initial;
    RulesetState current;
    Player human = Player::Left;
    std::uint64_t ai_budget = 0;
    std::vector<HistoryEntry> history;
    std::optional<Player> winner;
    bool approximate = false;
  };

  std::shared_ptr<Session> find(const std::string& id) const;
  std::shared_ptr<Session> open(const std::string& id, const Json& request);
  Json snapshot(const Session& s) const;
  void play(Session& s, const Json& move, bool by_ai);
  void ai_turns(Session& s);
  void log(const Json& event);

  ServiceOptions options_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 1;
  std::mutex log_mutex_;
  std::ofstream log_;
};

/// The preferred move for the side to act, with how it was found.
struct EngineMove {
  Json move;
  std::string source;  // "strategy", "minimax", "heuristic"
  bool approximate = false;
};
EngineMove engine_move(const RulesetState& state, std::uint64_t budget);

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<std::string> static_dir;
};
/// Serves HTTP on the calling thread; returns only if binding fails.
void serve(GameService& service, const ServerOptions& options);
/// Serves on an ephemeral loopback port from a background thread.
class BackgroundServer {
 public:
  BackgroundServer(GameService& service, std::optional<std::string> static_dir = std::nullopt);
  ~BackgroundServer();
  int port() const { return port_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = 0;
};

}  // namespace sstar::service
