#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "game.hpp"
#include "nimber.hpp"
#include "superstar_value.hpp"

namespace sstar {

enum class SuperstarClass { NimberClass, No0, Left0, Right0, Both0, OneSided };

std::string_view to_string(SuperstarClass c);

/// One summand of a superstar sum.
using StarTerm = std::variant<Superstar, Nimber>;

SuperstarClass classify(const Superstar& s);
SuperstarClass classify(const StarTerm& t);

/// *n when s = {0..n-1, x_i | 0..n-1, y_j} with every extra x_i, y_j > n and
/// both sides non-empty. Absent otherwise; never guesses.
std::optional<Nimber> simplify(const Superstar& s);

GamePosition to_game(const Superstar& s);

Superstar negate(const Superstar& s);

SumPosition to_sum(std::span<const StarTerm> terms);

/// Parses the superstar-sum grammar (options are `0` or `*N` only).
std::vector<StarTerm> parse_star_sum(std::string_view text);

/// Order-preserving text form, `0` for the empty sum.
std::string to_text(std::span<const StarTerm> terms);

/// A move in a superstar sum: component `component` becomes `result`.
struct StarMove {
  std::size_t component = 0;
  Nimber result;
};

/// True when the constructive "more own-0 games" strategy is defined for
/// `mover`: no both-0 or one-sided components, and either more of the mover's
/// 0-class games than the opponent's, or no 0-class games at all and a
/// non-zero nim-sum (the Nim endgame the strategy finishes in).
bool zero_game_win_applies(std::span<const StarTerm> sum, Player mover);

/// Next move of the constructive winning strategy. Throws Precondition when
/// zero_game_win_applies is false.
StarMove zero_game_win_move(std::span<const StarTerm> sum, Player mover);

/// A comet: net count of up (down counts -1), parity of lone stars, and the
/// superstar parts, kept unexpanded.
struct CometSum {
  std::int64_t up_count = 0;
  bool star_parity = false;
  std::vector<StarTerm> parts;
};

/// Defined for left-0, right-0 and nimber terms; throws Precondition
/// ("undefined-comet") otherwise.
CometSum comet_of(const StarTerm& t);

CometSum comet_sum(std::span<const CometSum> comets);

/// Game form of a comet sum, with up = {0|*}, down = {*|0}, star = *.
SumPosition expand(const CometSum& c);

}  // namespace sstar
