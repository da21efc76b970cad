#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sstar::epmx {

/// X wants the formula true, Y wants it false.
enum class Side { X, Y };

constexpr Side other(Side s) { return s == Side::X ? Side::Y : Side::X; }
constexpr std::string_view to_string(Side s) { return s == Side::X ? "X" : "Y"; }

struct Variable {
  std::string name;
  Side owner = Side::X;
  std::vector<std::string> states;
};

/// True iff `variable` is set to `state`.
struct Literal {
  std::size_t variable = 0;
  std::size_t state = 0;
  friend bool operator==(const Literal&, const Literal&) = default;
};

/// XOR of its literals.
using Clause = std::vector<Literal>;

/// Conjunction of XOR clauses over multistate variables.
struct Instance {
  std::vector<Variable> variables;
  std::vector<Clause> clauses;

  /// Throws Parse on dangling literal references, duplicate names, empty
  /// state lists or empty clauses.
  void validate() const;

  std::size_t count(Side owner) const;
  bool equal_partitioned() const { return count(Side::X) == count(Side::Y); }
  std::optional<std::size_t> find_variable(std::string_view name) const;
  std::optional<std::size_t> find_state(std::size_t variable, std::string_view state) const;
};

/// State index per variable; absent while unassigned.
using Assignment = std::vector<std::optional<std::size_t>>;

struct Move {
  std::size_t variable = 0;
  std::size_t state = 0;
  friend bool operator==(const Move&, const Move&) = default;
};

struct GameState {
  Assignment assignment;
  Side to_move = Side::X;
};

GameState initial_state(const Instance& inst, Side first);

/// Every clause has an odd number of true literals. Throws Precondition
/// ("incomplete-assignment") unless every variable is assigned.
bool evaluate(const Instance& inst, const Assignment& assignment);

std::vector<Move> legal_moves(const Instance& inst, const GameState& state);

/// Throws Precondition if the variable is not the mover's or already assigned.
GameState apply_move(const Instance& inst, const GameState& state, Move move);

Side winner(const Instance& inst, const Assignment& assignment);

struct SolveOptions {
  std::uint64_t node_budget = 10'000'000;
};

/// Minimax winner of the assignment game. Throws Precondition
/// ("not-equal-partitioned") or BudgetExceeded.
Side solve(const Instance& inst, Side first, SolveOptions options = {});

/// Appends, for each variable with a state missing from every clause, one
/// clause holding every state of that variable. A state repeated an even
/// number of times within a clause counts as missing there. Idempotent.
Instance complete_missing_states(const Instance& inst);

}  // namespace sstar::epmx
