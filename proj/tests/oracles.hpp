#pragma once
// Reference implementations written independently of the library's solvers.
// They favour obviousness over speed and are only used at tiny scale.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// ---------------------------------------------------------------- superstars

// A superstar as a pair of option bitmasks (bit i = move to *i). The nimber
// *n is the pair ((1<<n)-1, (1<<n)-1); 0 has no bits at all.
struct Star {
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  friend auto operator<=>(const Star&, const Star&) = default;
};

inline Star nim(unsigned n) { return {(1u << n) - 1, (1u << n) - 1}; }

inline Star star(std::initializer_list<unsigned> l, std::initializer_list<unsigned> r) {
  Star s;
  for (unsigned i : l) s.left |= 1u << i;
  for (unsigned i : r) s.right |= 1u << i;
  return s;
}

class StarSum {
 public:
  // Does `left_to_move ? Left : Right` win moving first on this multiset?
  bool wins(std::vector<Star> sum, bool left_to_move) {
    std::erase_if(sum, [](const Star& s) { return s.left == 0 && s.right == 0; });
    std::sort(sum.begin(), sum.end());
    auto key = std::make_pair(sum, left_to_move);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool result = false;
    for (std::size_t i = 0; i < sum.size() && !result; ++i) {
      const std::uint32_t opts = left_to_move ? sum[i].left : sum[i].right;
      for (unsigned k = 0; k < 32 && !result; ++k) {
        if (!((opts >> k) & 1)) continue;
        auto child = sum;
        child[i] = nim(k);
        result = !wins(child, !left_to_move);
      }
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

  // "N", "P", "L" or "R".
  std::string outcome(const std::vector<Star>& sum) {
    const bool l = wins(sum, true), r = wins(sum, false);
    if (l && r) return "N";
    if (l) return "L";
    if (r) return "R";
    return "P";
  }

 private:
  std::map<std::pair<std::vector<Star>, bool>, bool> memo_;
};

// ---------------------------------------------------------- explicit trees

struct Tree {
  std::vector<Tree> left, right;
};

inline Tree nim_tree(unsigned n) {
  Tree t;
  for (unsigned i = 0; i < n; ++i) {
    t.left.push_back(nim_tree(i));
    t.right.push_back(nim_tree(i));
  }
  return t;
}

inline Tree neg_tree(const Tree& t) {
  Tree out;
  for (const auto& o : t.right) out.left.push_back(neg_tree(o));
  for (const auto& o : t.left) out.right.push_back(neg_tree(o));
  return out;
}

// Plain recursion, no memo: only for very small sums.
inline bool tree_wins(const std::vector<Tree>& sum, bool left_to_move) {
  for (std::size_t i = 0; i < sum.size(); ++i) {
    for (const auto& o : left_to_move ? sum[i].left : sum[i].right) {
      auto child = sum;
      child[i] = o;
      if (!tree_wins(child, !left_to_move)) return true;
    }
  }
  return false;
}

// ------------------------------------------------------------------ Blackout

// Rows as bitmasks; AllOff is Left. No memo, no closed-form endgame, no row
// merging.
struct Blackout {
  std::uint32_t lights = 0;
  std::vector<std::uint32_t> all_off, one_on;
  unsigned budget = 0;
  bool all_off_to_move = true;
};

inline bool blackout_mover_wins(const Blackout& b) {
  auto& rows = b.all_off_to_move ? b.all_off : b.one_on;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int action = 0; action < 2; ++action) {
      Blackout next = b;
      auto& nrows = next.all_off_to_move ? next.all_off : next.one_on;
      if (action) next.lights ^= nrows[r];
      nrows.erase(nrows.begin() + static_cast<std::ptrdiff_t>(r));
      next.all_off_to_move = !b.all_off_to_move;
      if (!blackout_mover_wins(next)) return true;
    }
  }
  if (!b.all_off_to_move && b.one_on.empty() && b.lights != 0 && b.budget > 0) {
    Blackout next = b;
    --next.budget;
    next.all_off_to_move = true;
    if (!blackout_mover_wins(next)) return true;
  }
  return false;
}

// ------------------------------------------------------------------ set cover

// Minimum number of sets (as element bitmasks) whose union is `full`, by
// enumerating every subfamily. -1 when no cover exists.
inline int min_cover(const std::vector<std::uint32_t>& sets, std::uint32_t full) {
  int best = -1;
  for (std::uint32_t pick = 0; pick < (1u << sets.size()); ++pick) {
    std::uint32_t u = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if ((pick >> i) & 1) u |= sets[i];
    }
    const int c = __builtin_popcount(pick);
    if (u == full && (best < 0 || c < best)) best = c;
  }
  return best;
}

}  // namespace oracle
