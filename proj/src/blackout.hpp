#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "game.hpp"
#include "player.hpp"

namespace sstar::blackout {

using Bits = boost::dynamic_bitset<std::uint64_t>;

/// AllOff plays Left, OneOn plays Right.
inline constexpr Player kAllOff = Player::Left;
inline constexpr Player kOneOn = Player::Right;

std::string_view role_name(Player p);

/// Lights, one switch matrix per player, and OneOn's remaining passes.
struct Position {
  Bits lights;
  std::vector<Bits> all_off;
  std::vector<Bits> one_on;
  std::uint64_t pass_budget = 0;
  Player to_move = kAllOff;

  std::size_t light_count() const { return lights.size(); }
  /// Throws Parse if a row has the wrong width or no set bit.
  void validate() const;
  std::vector<Bits>& rows(Player p) { return p == kAllOff ? all_off : one_on; }
  const std::vector<Bits>& rows(Player p) const { return p == kAllOff ? all_off : one_on; }
};

struct Move {
  enum class Kind { Switch, Pass };
  Kind kind = Kind::Switch;
  Player side = kAllOff;
  std::size_t row = 0;
  /// 1 toggles the row's lights, 0 just retires the switch.
  bool action = false;

  static Move pass() { return Move{Kind::Pass, kOneOn, 0, false}; }
  friend bool operator==(const Move&, const Move&) = default;
};

/// Moves available to `side` regardless of whose turn it is.
std::vector<Move> moves_for(const Position& pos, Player side);

std::vector<Move> legal_moves(const Position& pos);

/// Applies a move of pos.to_move and flips the turn. Throws IllegalMove.
Position apply_move(const Position& pos, const Move& move);

/// The player to move when they have no legal move (and so lose).
std::optional<Player> loser_if_stuck(const Position& pos);

/// Indices of rows whose XOR equals target, by Gaussian elimination over GF(2).
std::optional<std::vector<std::size_t>> gf2_solve(const Bits& target, std::span<const Bits> rows);

struct SolveOptions {
  std::uint64_t node_budget = 10'000'000;
  /// Decide positions where OneOn has no switches left in closed form.
  bool endgame_shortcut = true;
};

/// Normal-play minimax over Blackout positions, identical rows merged.
class Solver {
 public:
  explicit Solver(SolveOptions options = {}) : options_(options) {}

  /// Winner with optimal play from pos. Throws BudgetExceeded.
  Player solve(const Position& pos);

  /// A move after which the mover still wins, if the mover is winning.
  std::optional<Move> winning_move(const Position& pos);

  std::uint64_t nodes_expanded() const { return nodes_; }

 private:
  bool mover_wins(const Position& pos);
  bool endgame(const Position& pos) const;

  SolveOptions options_;
  std::uint64_t nodes_ = 0;
  std::unordered_map<std::string, bool> memo_;
};

/// `0`/`1` characters; character i is light e_(i+1).
Bits parse_bits(std::string_view text);
std::string to_string(const Bits& bits);

/// The position as a sum component: Left moves are AllOff's, Right moves OneOn's.
std::shared_ptr<const RulesetGame> as_component(const Position& pos);

}  // namespace sstar::blackout
