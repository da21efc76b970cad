#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "nimber.hpp"
#include "player.hpp"
#include "superstar_value.hpp"

namespace sstar {

/// A finite partizan game given explicitly by its option sets. Immutable;
/// copies share structure.
class GamePosition {
 public:
  /// The game 0.
  GamePosition();
  GamePosition(std::vector<GamePosition> left, std::vector<GamePosition> right);

  /// The nimber tree *n = {0, *, ..., *(n-1)}.
  static GamePosition nimber(std::uint64_t n);

  const std::vector<GamePosition>& left_options() const;
  const std::vector<GamePosition>& right_options() const;
  const std::vector<GamePosition>& options(Player p) const {
    return p == Player::Left ? left_options() : right_options();
  }

  bool is_zero() const { return left_options().empty() && right_options().empty(); }

  /// n when the tree is structurally *n.
  std::optional<std::uint64_t> as_nimber() const;

  /// Canonical text form; option lists are sorted and deduplicated.
  const std::string& canonical() const;

  friend bool operator==(const GamePosition& a, const GamePosition& b) {
    return a.node_ == b.node_ || a.canonical() == b.canonical();
  }

 private:
  struct Node;
  explicit GamePosition(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Conjugate: swaps Left and Right recursively.
GamePosition negate(const GamePosition& g);

class Component;

/// Contract for rulesets that plug into sums as opaque components.
class RulesetGame {
 public:
  virtual ~RulesetGame() = default;
  virtual std::vector<Component> options(Player p) const = 0;
  /// Unique across rulesets; used as the memo identity of the component.
  virtual std::string key() const = 0;
};

/// One summand. Nimber-shaped trees and superstars normalize to Nimber, and
/// trees whose options are all nimbers normalize to Superstar, so equal
/// structures always share a canonical form.
class Component {
 public:
  using Value = std::variant<Nimber, Superstar, GamePosition,
                             std::shared_ptr<const RulesetGame>>;

  Component(Nimber n);  // NOLINT(google-explicit-constructor)
  Component(Superstar s);  // NOLINT(google-explicit-constructor)
  Component(const GamePosition& g);  // NOLINT(google-explicit-constructor)
  Component(std::shared_ptr<const RulesetGame> r);  // NOLINT(google-explicit-constructor)

  const Value& value() const { return value_; }
  std::optional<Nimber> nimber() const;
  bool is_nimber() const { return std::holds_alternative<Nimber>(value_); }
  bool is_zero() const;

  std::vector<Component> options(Player p) const;
  std::string canonical() const;

 private:
  Value value_;
};

/// Explicit game tree of any component (ruleset components are expanded).
GamePosition to_tree(const Component& c);

/// A disjunctive sum; zero components are dropped on insertion.
class SumPosition {
 public:
  SumPosition() = default;
  SumPosition(std::vector<Component> components);  // NOLINT(google-explicit-constructor)
  SumPosition(Component c);  // NOLINT(google-explicit-constructor)

  const std::vector<Component>& components() const { return components_; }
  bool empty() const { return components_.empty(); }

  void add(Component c);
  SumPosition& operator+=(const SumPosition& other);
  friend SumPosition operator+(SumPosition a, const SumPosition& b) { return a += b; }

  /// Components sorted under the canonical total order, `+`-joined; `0` if empty.
  std::string canonical() const;

 private:
  std::vector<Component> components_;
};

SumPosition negate(const SumPosition& g);
Component negate(const Component& c);

/// Parses `0`, `*`, `*N`, `{a,b|c}` terms joined by `+`. Whitespace is ignored.
SumPosition parse_sum(std::string_view text);

/// Text form preserving component order (no sorting).
std::string to_text(const SumPosition& g);

struct SolverOptions {
  /// Maximum positions expanded per root query.
  std::uint64_t node_budget = 10'000'000;
  bool memoize = true;
  /// Decide all-nimber nodes by nim-sum instead of search.
  bool nimber_short_circuit = true;
  /// Replace the nimber components of every node by their nim-sum.
  bool fold_nimbers = true;
};

struct SumMove {
  std::size_t component = 0;
  Component result;
};

/// Exhaustive normal-play search with a transposition table. Not thread-safe;
/// use one solver per thread.
class Solver {
 public:
  explicit Solver(SolverOptions options = {});

  bool wins_moving_first(const SumPosition& g, Player p);
  OutcomeClass outcome(const SumPosition& g);
  /// outcome(g - h) == P.
  bool equals(const SumPosition& g, const SumPosition& h);
  /// outcome(g + *n) == P.
  bool is_equal_to_nimber(const SumPosition& g, std::uint64_t n);

  /// A move for p after which the opponent loses moving first, if one exists.
  std::optional<SumMove> winning_move(const SumPosition& g, Player p);

  std::uint64_t nodes_expanded() const { return nodes_; }
  std::size_t memo_size() const { return memo_.size(); }
  const SolverOptions& options() const { return options_; }
  void clear();

 private:
  struct Option {
    bool is_nimber;
    std::uint64_t value;  // nimber value or interned id
  };
  struct Interned {
    Component component;
    bool expanded = false;
    std::vector<Option> options[2];
  };
  struct State {
    std::vector<std::uint32_t> ids;  // sorted
    std::vector<std::uint64_t> nims;  // sorted, non-zero
  };
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& k) const noexcept;
  };

  std::uint32_t intern(const Component& c);
  const Interned& expand(std::uint32_t id);
  State make_state(const SumPosition& g);
  void add_nimber(State& s, std::uint64_t v) const;
  bool wins(const State& s, Player p);

  SolverOptions options_;
  std::uint64_t nodes_ = 0;
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::deque<Interned> table_;
  std::unordered_map<std::vector<std::uint64_t>, bool, KeyHash> memo_;
};

}  // namespace sstar
