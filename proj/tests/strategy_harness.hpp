#pragma once
// Playout harness for the "0 game win" strategy plus superstar generators,
// shared by the unit tests and the acceptance binary.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "error.hpp"
#include "superstar.hpp"

namespace harness {

using sstar::Nimber;
using sstar::Player;
using sstar::StarTerm;
using sstar::Superstar;

inline Superstar::Indices bits_to_indices(unsigned mask) {
  Superstar::Indices out;
  for (unsigned i = 0; i < 32; ++i) {
    if ((mask >> i) & 1) out.push_back(i);
  }
  return out;
}

/// Superstar or nimber with both sides drawn from the bitmasks.
inline StarTerm make_term(unsigned left, unsigned right) {
  if (left == 0 && right == 0) return Nimber(0);
  Superstar s(bits_to_indices(left), bits_to_indices(right));
  if (auto n = s.as_nimber()) return Nimber(*n);
  return s;
}

/// Every non-zero term whose option indices are all <= max_index.
inline std::vector<StarTerm> all_terms(unsigned max_index) {
  std::vector<StarTerm> out;
  const unsigned full = 1u << (max_index + 1);
  for (unsigned l = 0; l < full; ++l) {
    for (unsigned r = 0; r < full; ++r) {
      if (l == 0 && r == 0) continue;
      out.push_back(make_term(l, r));
    }
  }
  return out;
}

/// Terms the strategy may face: nimbers, No0, Left0 and Right0.
inline bool strategy_shaped(const StarTerm& t) {
  auto c = sstar::classify(t);
  return c != sstar::SuperstarClass::Both0 && c != sstar::SuperstarClass::OneSided &&
         !(std::holds_alternative<Nimber>(t) && std::get<Nimber>(t).value == 0);
}

inline std::vector<std::uint64_t> options_of(const StarTerm& t, Player p) {
  if (const auto* n = std::get_if<Nimber>(&t)) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t k = 0; k < n->value; ++k) out.push_back(k);
    return out;
  }
  return std::get<Superstar>(t).side(p);
}

/// Exhaustive playout: does the strategist win every line when following
/// zero_game_win_move against all replies?
class Playout {
 public:
  explicit Playout(Player strategist) : me_(strategist) {}

  bool strategist_wins(const std::vector<StarTerm>& terms, bool my_turn) {
    const std::string key = (my_turn ? "1" : "0") + sstar::to_text(sorted(terms));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool result = my_turn ? my_move(terms) : all_replies(terms);
    memo_.emplace(key, result);
    return result;
  }

  std::string failure;

 private:
  static std::vector<StarTerm> sorted(std::vector<StarTerm> t) {
    std::sort(t.begin(), t.end(), [](const StarTerm& a, const StarTerm& b) {
      return sstar::to_text(std::span(&a, 1)) < sstar::to_text(std::span(&b, 1));
    });
    return t;
  }

  bool my_move(const std::vector<StarTerm>& terms) {
    sstar::StarMove m;
    try {
      m = sstar::zero_game_win_move(terms, me_);
    } catch (const sstar::Error& e) {
      if (failure.empty()) failure = "strategy refused at " + sstar::to_text(terms) + ": " + e.what();
      return false;
    }
    const auto opts = options_of(terms.at(m.component), me_);
    if (std::find(opts.begin(), opts.end(), m.result.value) == opts.end()) {
      if (failure.empty()) failure = "illegal strategy move at " + sstar::to_text(terms);
      return false;
    }
    auto next = terms;
    next[m.component] = m.result;
    bool ok = strategist_wins(next, false);
    if (!ok && failure.empty()) failure = "strategy lost from " + sstar::to_text(terms);
    return ok;
  }

  bool all_replies(const std::vector<StarTerm>& terms) {
    const Player them = sstar::opponent(me_);
    for (std::size_t i = 0; i < terms.size(); ++i) {
      for (auto k : options_of(terms[i], them)) {
        auto next = terms;
        next[i] = Nimber(k);
        if (!strategist_wins(next, true)) return false;
      }
    }
    return true;  // opponent stuck, or every reply loses
  }

  Player me_;
  std::map<std::string, bool> memo_;
};

}  // namespace harness
