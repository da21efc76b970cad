#include "superstar.hpp"

#include <algorithm>

#include "error.hpp"

namespace sstar {

std::string_view to_string(SuperstarClass c) {
  switch (c) {
    case SuperstarClass::NimberClass: return "nimber";
    case SuperstarClass::No0: return "no-0";
    case SuperstarClass::Left0: return "left-0";
    case SuperstarClass::Right0: return "right-0";
    case SuperstarClass::Both0: return "both-0";
    case SuperstarClass::OneSided: return "one-sided";
  }
  return "?";
}

SuperstarClass classify(const Superstar& s) {
  if (s.as_nimber()) return SuperstarClass::NimberClass;
  if (s.left().empty() || s.right().empty()) return SuperstarClass::OneSided;
  const bool l = s.has_zero(Player::Left);
  const bool r = s.has_zero(Player::Right);
  if (l && r) return SuperstarClass::Both0;
  if (l) return SuperstarClass::Left0;
  if (r) return SuperstarClass::Right0;
  return SuperstarClass::No0;
}

SuperstarClass classify(const StarTerm& t) {
  if (const auto* s = std::get_if<Superstar>(&t)) return classify(*s);
  return SuperstarClass::NimberClass;
}

std::optional<Nimber> simplify(const Superstar& s) {
  const auto& l = s.left();
  const auto& r = s.right();
  if (l.empty() || r.empty()) return std::nullopt;
  // n is the length of the shared prefix 0, 1, ..., n-1.
  std::uint64_t n = 0;
  while (n < l.size() && n < r.size() && l[n] == n && r[n] == n) ++n;
  auto extras_above = [n](const Superstar::Indices& side) {
    return std::all_of(side.begin() + static_cast<std::ptrdiff_t>(n), side.end(),
                       [n](std::uint64_t x) { return x > n; });
  };
  if (extras_above(l) && extras_above(r)) return Nimber(n);
  return std::nullopt;
}

GamePosition to_game(const Superstar& s) {
  std::vector<GamePosition> left, right;
  for (auto i : s.left()) left.push_back(GamePosition::nimber(i));
  for (auto i : s.right()) right.push_back(GamePosition::nimber(i));
  return GamePosition(std::move(left), std::move(right));
}

Superstar negate(const Superstar& s) { return Superstar(s.right(), s.left()); }

SumPosition to_sum(std::span<const StarTerm> terms) {
  SumPosition sum;
  for (const auto& t : terms) {
    std::visit([&](const auto& v) { sum.add(Component(v)); }, t);
  }
  return sum;
}

std::vector<StarTerm> parse_star_sum(std::string_view text) {
  std::vector<StarTerm> out;
  const SumPosition sum = parse_sum(text);
  for (const auto& c : sum.components()) {
    if (auto n = c.nimber()) {
      out.emplace_back(*n);
    } else if (const auto* s = std::get_if<Superstar>(&c.value())) {
      out.emplace_back(*s);
    } else {
      fail(ErrorCode::Parse, "superstar sum: options must be 0 or *N, got " + c.canonical());
    }
  }
  return out;
}

std::string to_text(std::span<const StarTerm> terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0) out += '+';
    std::visit(
        [&](const auto& v) {
          if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Nimber>) {
            out += to_string(v);
          } else {
            out += v.to_string();
          }
        },
        terms[i]);
  }
  return out;
}

// ------------------------------------------------------ "0 game win" strategy

namespace {

struct Census {
  std::vector<std::size_t> own_zero;    // mover's 0-class games
  std::vector<std::size_t> other_zero;  // opponent's 0-class games
  std::vector<std::size_t> no_zero;
  std::vector<std::size_t> nimbers;     // non-zero nimbers, including *n superstars
  std::vector<std::uint64_t> value;     // nimber value per component (0 if not a nimber)
  std::uint64_t nim_sum = 0;
  bool malformed = false;
};

Census take_census(std::span<const StarTerm> sum, Player mover) {
  Census c;
  c.value.assign(sum.size(), 0);
  const SuperstarClass own = mover == Player::Left ? SuperstarClass::Left0 : SuperstarClass::Right0;
  const SuperstarClass other = mover == Player::Left ? SuperstarClass::Right0 : SuperstarClass::Left0;
  for (std::size_t i = 0; i < sum.size(); ++i) {
    std::uint64_t v = 0;
    bool is_nimber = false;
    if (const auto* n = std::get_if<Nimber>(&sum[i])) {
      v = n->value;
      is_nimber = true;
    } else if (auto k = std::get<Superstar>(sum[i]).as_nimber()) {
      v = *k;
      is_nimber = true;
    }
    if (is_nimber) {
      if (v != 0) {
        c.nimbers.push_back(i);
        c.value[i] = v;
        c.nim_sum ^= v;
      }
      continue;
    }
    SuperstarClass k = classify(sum[i]);
    if (k == own) {
      c.own_zero.push_back(i);
    } else if (k == other) {
      c.other_zero.push_back(i);
    } else if (k == SuperstarClass::No0) {
      c.no_zero.push_back(i);
    } else {
      c.malformed = true;
    }
  }
  return c;
}

bool applies(const Census& c) {
  if (c.malformed) return false;
  if (c.own_zero.size() > c.other_zero.size()) return true;
  return c.own_zero.empty() && c.other_zero.empty() && c.nim_sum != 0;
}

// Nim move restoring a zero nim-sum over the nimber components.
std::optional<StarMove> restore_nim_sum(const Census& c) {
  if (c.nim_sum == 0) return std::nullopt;
  for (std::size_t i : c.nimbers) {
    std::uint64_t target = c.value[i] ^ c.nim_sum;
    if (target < c.value[i]) return StarMove{i, Nimber(target)};
  }
  return std::nullopt;
}

}  // namespace

bool zero_game_win_applies(std::span<const StarTerm> sum, Player mover) {
  return applies(take_census(sum, mover));
}

StarMove zero_game_win_move(std::span<const StarTerm> sum, Player mover) {
  const Census c = take_census(sum, mover);
  if (!applies(c)) {
    fail(ErrorCode::Precondition,
         "precondition-violated: the 0-game strategy needs no both-0/one-sided games and "
         "more of the mover's 0-games than the opponent's");
  }

  // Eliminate the opponent's 0-games with the smallest available option.
  if (!c.other_zero.empty()) {
    std::size_t i = c.other_zero.front();
    return {i, Nimber(std::get<Superstar>(sum[i]).side(mover).front())};
  }

  if (c.own_zero.empty()) return *restore_nim_sum(c);

  if (c.own_zero.size() == 1) {
    if (c.nim_sum == 0) return {c.own_zero.front(), Nimber(0)};
    return *restore_nim_sum(c);
  }

  // Two or more own 0-games: keep them until nothing else is left.
  if (c.nimbers.empty() && c.no_zero.empty()) return {c.own_zero.front(), Nimber(0)};
  if (auto m = restore_nim_sum(c)) return *m;
  if (!c.nimbers.empty()) return {c.nimbers.front(), Nimber(0)};
  std::size_t i = c.no_zero.front();
  return {i, Nimber(std::get<Superstar>(sum[i]).side(mover).front())};
}

// ------------------------------------------------------------------- comets

CometSum comet_of(const StarTerm& t) {
  CometSum c;
  c.parts.push_back(t);
  switch (classify(t)) {
    case SuperstarClass::NimberClass:
      break;
    case SuperstarClass::Left0:
      c.up_count = -1;
      c.star_parity = true;
      break;
    case SuperstarClass::Right0:
      c.up_count = 1;
      c.star_parity = true;
      break;
    default:
      fail(ErrorCode::Precondition,
           "undefined-comet: comets are defined for left-0, right-0 and nimber terms, not " +
               std::string(to_string(classify(t))));
  }
  return c;
}

CometSum comet_sum(std::span<const CometSum> comets) {
  CometSum out;
  for (const auto& c : comets) {
    out.up_count += c.up_count;
    out.star_parity ^= c.star_parity;
    out.parts.insert(out.parts.end(), c.parts.begin(), c.parts.end());
  }
  return out;
}

SumPosition expand(const CometSum& c) {
  SumPosition sum = to_sum(c.parts);
  const GamePosition zero;
  const GamePosition star = GamePosition::nimber(1);
  const GamePosition up({zero}, {star});
  const GamePosition down({star}, {zero});
  const std::int64_t count = c.up_count < 0 ? -c.up_count : c.up_count;
  for (std::int64_t i = 0; i < count; ++i) sum.add(Component(c.up_count > 0 ? up : down));
  if (c.star_parity) sum.add(Component(Nimber(1)));
  return sum;
}

}  // namespace sstar
