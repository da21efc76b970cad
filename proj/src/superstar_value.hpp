#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "player.hpp"

namespace sstar {

/// A game whose options are all nimbers, stored as the two sets of option
/// indices. At least one side is non-empty; the empty game is the nimber 0.
class Superstar {
 public:
  using Indices = std::vector<std::uint64_t>;

  /// Sorts and deduplicates both sides. Throws Precondition if both are empty.
  Superstar(Indices left, Indices right);

  const Indices& left() const { return left_; }
  const Indices& right() const { return right_; }
  const Indices& side(Player p) const { return p == Player::Left ? left_ : right_; }

  bool has_zero(Player p) const;

  /// n when both sides are exactly {0, ..., n-1}, i.e. the superstar is *n.
  std::optional<std::uint64_t> as_nimber() const;

  /// `{0,*2,*4|*1,*2}`.
  std::string to_string() const;

  friend auto operator<=>(const Superstar&, const Superstar&) = default;
  friend bool operator==(const Superstar&, const Superstar&) = default;

 private:
  Indices left_;
  Indices right_;
};

}  // namespace sstar
