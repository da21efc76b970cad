#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "game.hpp"
#include "superstar.hpp"

namespace sstar::paintcan {

/// Blue is Left's color, Red is Right's; Green is shared, Gray unplayable.
enum class BrickColor : char { Blue = 'B', Red = 'R', Green = 'G', Gray = 'Y' };

/// Bricks from bottom (index 0) to top.
using Stack = std::vector<BrickColor>;

struct Position {
  std::vector<Stack> stacks;
  friend bool operator==(const Position&, const Position&) = default;
};

struct BrickMove {
  std::size_t stack = 0;
  std::size_t brick = 0;
  friend bool operator==(const BrickMove&, const BrickMove&) = default;
};

bool playable_by(BrickColor c, Player p);

/// A can of paint sits on every stack holding a non-Green brick.
bool has_paint_can(const Stack& s);

std::vector<BrickMove> legal_moves(const Position& pos, Player p);

/// Removes the chosen brick and everything above it, spills the can, and
/// deletes the stack if it becomes empty. Throws IllegalMove.
Position apply_move(const Position& pos, Player p, BrickMove move);

StarTerm stack_to_superstar(const Stack& s);

/// Inverse of stack_to_superstar; no Gray bricks above the highest option.
Stack superstar_to_stack(const StarTerm& t);

std::vector<StarTerm> position_terms(const Position& pos);
SumPosition position_value(const Position& pos);

/// A stack as a sum component whose moves come from legal_moves/apply_move.
std::shared_ptr<const RulesetGame> stack_game(Stack s);

/// `BRGYB/GGGG`: bottom-to-top letters B R G Y, stacks joined by `/`.
/// Empty stacks and trailing Gray bricks are rejected.
Position parse_position(std::string_view text);
std::string to_text(const Position& pos);
std::string to_text(const Stack& s);

}  // namespace sstar::paintcan
