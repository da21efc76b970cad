#include "epmx.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "error.hpp"

namespace sstar::epmx {

void Instance::validate() const {
  std::set<std::string> names;
  for (const auto& v : variables) {
    if (v.name.empty()) fail(ErrorCode::Parse, "epmx: variable without a name");
    if (!names.insert(v.name).second) fail(ErrorCode::Parse, "epmx: duplicate variable " + v.name);
    if (v.states.empty()) fail(ErrorCode::Parse, "epmx: variable " + v.name + " has no states");
    std::set<std::string> states(v.states.begin(), v.states.end());
    if (states.size() != v.states.size()) {
      fail(ErrorCode::Parse, "epmx: duplicate state in variable " + v.name);
    }
  }
  for (const auto& c : clauses) {
    if (c.empty()) fail(ErrorCode::Parse, "epmx: empty clause");
    for (const auto& l : c) {
      if (l.variable >= variables.size() || l.state >= variables[l.variable].states.size()) {
        fail(ErrorCode::Parse, "epmx: literal references an undeclared variable or state");
      }
    }
  }
}

std::size_t Instance::count(Side owner) const {
  return static_cast<std::size_t>(std::count_if(
      variables.begin(), variables.end(), [owner](const Variable& v) { return v.owner == owner; }));
}

std::optional<std::size_t> Instance::find_variable(std::string_view name) const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Instance::find_state(std::size_t variable, std::string_view state) const {
  const auto& states = variables.at(variable).states;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i] == state) return i;
  }
  return std::nullopt;
}

GameState initial_state(const Instance& inst, Side first) {
  return GameState{Assignment(inst.variables.size()), first};
}

bool evaluate(const Instance& inst, const Assignment& assignment) {
  if (assignment.size() != inst.variables.size() ||
      std::any_of(assignment.begin(), assignment.end(), [](const auto& a) { return !a; })) {
    fail(ErrorCode::Precondition, "incomplete-assignment: every variable must be assigned");
  }
  for (const auto& clause : inst.clauses) {
    bool parity = false;
    for (const auto& l : clause) {
      if (*assignment[l.variable] == l.state) parity = !parity;
    }
    if (!parity) return false;
  }
  return true;
}

std::vector<Move> legal_moves(const Instance& inst, const GameState& state) {
  std::vector<Move> out;
  for (std::size_t v = 0; v < inst.variables.size(); ++v) {
    if (inst.variables[v].owner != state.to_move || state.assignment[v]) continue;
    for (std::size_t s = 0; s < inst.variables[v].states.size(); ++s) out.push_back({v, s});
  }
  return out;
}

GameState apply_move(const Instance& inst, const GameState& state, Move move) {
  if (move.variable >= inst.variables.size() ||
      inst.variables[move.variable].owner != state.to_move || state.assignment[move.variable] ||
      move.state >= inst.variables[move.variable].states.size()) {
    fail(ErrorCode::Precondition, "illegal-move: not an unassigned variable of the mover");
  }
  GameState next = state;
  next.assignment[move.variable] = move.state;
  next.to_move = other(state.to_move);
  return next;
}

Side winner(const Instance& inst, const Assignment& assignment) {
  return evaluate(inst, assignment) ? Side::X : Side::Y;
}

namespace {

class Minimax {
 public:
  Minimax(const Instance& inst, SolveOptions options) : inst_(inst), options_(options) {}

  Side run(Side first) {
    std::vector<std::uint32_t> code(inst_.variables.size(), 0);
    return search(code, first, 0);
  }

 private:
  // code[v] = 0 while unassigned, state + 1 afterwards.
  Side search(std::vector<std::uint32_t>& code, Side to_move, std::size_t assigned) {
    if (assigned == code.size()) {
      Assignment a(code.size());
      for (std::size_t v = 0; v < code.size(); ++v) a[v] = code[v] - 1;
      return winner(inst_, a);
    }
    std::string key(reinterpret_cast<const char*>(code.data()), code.size() * sizeof(std::uint32_t));
    key += to_move == Side::X ? 'X' : 'Y';
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (++nodes_ > options_.node_budget) {
      fail(ErrorCode::BudgetExceeded, "budget-exceeded: EPMX search exceeded " +
                                          std::to_string(options_.node_budget) + " nodes");
    }
    Side result = other(to_move);
    for (std::size_t v = 0; v < code.size() && result != to_move; ++v) {
      if (inst_.variables[v].owner != to_move || code[v] != 0) continue;
      for (std::size_t s = 0; s < inst_.variables[v].states.size(); ++s) {
        code[v] = static_cast<std::uint32_t>(s + 1);
        Side w = search(code, other(to_move), assigned + 1);
        code[v] = 0;
        if (w == to_move) {
          result = to_move;
          break;
        }
      }
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

  const Instance& inst_;
  SolveOptions options_;
  std::uint64_t nodes_ = 0;
  std::unordered_map<std::string, Side> memo_;
};

}  // namespace

Side solve(const Instance& inst, Side first, SolveOptions options) {
  inst.validate();
  if (!inst.equal_partitioned()) {
    fail(ErrorCode::Precondition, "not-equal-partitioned: X owns " +
                                      std::to_string(inst.count(Side::X)) + " variables, Y owns " +
                                      std::to_string(inst.count(Side::Y)));
  }
  return Minimax(inst, options).run(first);
}

Instance complete_missing_states(const Instance& inst) {
  Instance out = inst;
  std::vector<std::vector<bool>> used(inst.variables.size());
  for (std::size_t v = 0; v < inst.variables.size(); ++v) {
    used[v].assign(inst.variables[v].states.size(), false);
  }
  // A literal repeated an even number of times in a clause cancels out.
  for (const auto& c : inst.clauses) {
    std::map<std::pair<std::size_t, std::size_t>, bool> odd;
    for (const auto& l : c) odd[{l.variable, l.state}] ^= true;
    for (const auto& [lit, is_odd] : odd) {
      if (is_odd) used[lit.first][lit.second] = true;
    }
  }
  for (std::size_t v = 0; v < inst.variables.size(); ++v) {
    if (std::all_of(used[v].begin(), used[v].end(), [](bool b) { return b; })) continue;
    Clause all;
    for (std::size_t s = 0; s < inst.variables[v].states.size(); ++s) all.push_back({v, s});
    out.clauses.push_back(std::move(all));
  }
  return out;
}

}  // namespace sstar::epmx
