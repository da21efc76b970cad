#pragma once

#include <cstdint>
#include <string_view>

namespace sstar {

/// Left is Blue in Paint Can, AllOff in Blackout.
enum class Player : std::uint8_t { Left, Right };

constexpr Player opponent(Player p) {
  return p == Player::Left ? Player::Right : Player::Left;
}

constexpr std::string_view to_string(Player p) {
  return p == Player::Left ? "Left" : "Right";
}

enum class OutcomeClass : std::uint8_t { N, P, L, R };

constexpr OutcomeClass outcome_from(bool left_wins_first, bool right_wins_first) {
  if (left_wins_first) return right_wins_first ? OutcomeClass::N : OutcomeClass::L;
  return right_wins_first ? OutcomeClass::R : OutcomeClass::P;
}

constexpr std::string_view to_string(OutcomeClass o) {
  switch (o) {
    case OutcomeClass::N: return "N";
    case OutcomeClass::P: return "P";
    case OutcomeClass::L: return "L";
    case OutcomeClass::R: return "R";
  }
  return "?";
}

}  // namespace sstar
