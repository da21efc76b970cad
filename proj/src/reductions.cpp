#include "reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "error.hpp"

namespace sstar::reductions {

// ---------------------------------------------------------------------- CNF

void CnfInstance::validate() const {
  if (variable_count < 0) fail(ErrorCode::Parse, "cnf: negative variable count");
  for (const auto& c : clauses) {
    for (int l : c) {
      if (l == 0 || std::abs(l) > variable_count) {
        fail(ErrorCode::Parse, "cnf: literal " + std::to_string(l) + " out of range");
      }
    }
  }
}

CnfInstance parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  CnfInstance cnf;
  bool header = false;
  std::vector<int> clause;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c" || first[0] == 'c') continue;
    if (first == "%") break;
    if (first == "p") {
      std::string fmt;
      long long clauses = 0;
      if (header || !(ls >> fmt >> cnf.variable_count >> clauses) || fmt != "cnf") {
        fail(ErrorCode::Parse, "dimacs: bad problem line");
      }
      header = true;
      continue;
    }
    if (!header) fail(ErrorCode::Parse, "dimacs: clause before the problem line");
    std::istringstream ints(line);
    std::string tok;
    while (ints >> tok) {
      char* end = nullptr;
      long v = std::strtol(tok.c_str(), &end, 10);
      if (*end != '\0') fail(ErrorCode::Parse, "dimacs: bad literal '" + tok + "'");
      if (v == 0) {
        cnf.clauses.push_back(std::move(clause));
        clause.clear();
      } else {
        clause.push_back(static_cast<int>(v));
      }
    }
  }
  if (!header) fail(ErrorCode::Parse, "dimacs: missing problem line");
  if (!clause.empty()) cnf.clauses.push_back(std::move(clause));
  cnf.validate();
  return cnf;
}

std::string to_dimacs(const CnfInstance& cnf) {
  std::string out = "p cnf " + std::to_string(cnf.variable_count) + " " +
                    std::to_string(cnf.clauses.size()) + "\n";
  for (const auto& c : cnf.clauses) {
    for (int l : c) out += std::to_string(l) + " ";
    out += "0\n";
  }
  return out;
}

bool satisfies(const CnfInstance& cnf, const BoolAssignment& a) {
  for (const auto& c : cnf.clauses) {
    bool sat = false;
    for (int l : c) {
      auto v = static_cast<std::size_t>(std::abs(l));
      if (v < a.size() && a[v] == (l > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

namespace {

struct Occurrences {
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
};

std::vector<Occurrences> occurrences(const CnfInstance& cnf) {
  std::vector<Occurrences> occ(static_cast<std::size_t>(cnf.variable_count) + 1);
  for (std::size_t j = 0; j < cnf.clauses.size(); ++j) {
    for (int l : cnf.clauses[j]) {
      auto& o = occ[static_cast<std::size_t>(std::abs(l))];
      (l > 0 ? o.pos : o.neg).push_back(j);
    }
  }
  return occ;
}

}  // namespace

std::optional<std::string> restriction_violation(const CnfInstance& cnf) {
  cnf.validate();
  if (cnf.variable_count % 2 == 0) return "even number of variables";
  for (const auto& c : cnf.clauses) {
    if (c.empty()) return "empty clause";
    if (c.size() > 3) return "clause wider than 3";
    std::set<int> seen(c.begin(), c.end());
    if (seen.size() != c.size()) return "repeated literal in a clause";
  }
  auto occ = occurrences(cnf);
  for (int v = 1; v <= cnf.variable_count; ++v) {
    const auto& o = occ[static_cast<std::size_t>(v)];
    if (o.pos.size() + o.neg.size() > 3) return "variable " + std::to_string(v) + " occurs more than 3 times";
    if (o.pos.empty() || o.neg.empty()) {
      return "variable " + std::to_string(v) + " lacks a negated or unnegated occurrence";
    }
  }
  return std::nullopt;
}

namespace {

CnfInstance trivially(bool satisfiable) {
  CnfInstance out;
  out.variable_count = 1;
  if (satisfiable) {
    out.clauses = {{1, -1}};
  } else {
    out.clauses = {{1}, {-1}};
  }
  return out;
}

}  // namespace

CnfInstance normalize_3sat(const CnfInstance& cnf) {
  if (!restriction_violation(cnf)) return cnf;

  int next_var = cnf.variable_count;
  std::vector<std::vector<int>> clauses;

  // Deduplicate literals, drop tautologies, split wide clauses with fresh
  // chaining variables.
  for (const auto& c : cnf.clauses) {
    std::set<int> lits(c.begin(), c.end());
    if (lits.empty()) return trivially(false);
    bool tautology = std::any_of(lits.begin(), lits.end(), [&](int l) { return lits.count(-l) > 0; });
    if (tautology) continue;
    std::vector<int> v(lits.begin(), lits.end());
    while (v.size() > 3) {
      int z = ++next_var;
      clauses.push_back({v[0], v[1], z});
      v.erase(v.begin(), v.begin() + 2);
      v.insert(v.begin(), -z);
    }
    clauses.push_back(std::move(v));
  }

  // Pure literals can be set true; their clauses disappear.
  for (bool changed = true; changed;) {
    changed = false;
    std::map<int, std::pair<bool, bool>> polarity;
    for (const auto& c : clauses) {
      for (int l : c) (l > 0 ? polarity[std::abs(l)].first : polarity[std::abs(l)].second) = true;
    }
    std::set<int> pure;
    for (const auto& [v, p] : polarity) {
      if (p.first != p.second) pure.insert(p.first ? v : -v);
    }
    if (pure.empty()) break;
    std::erase_if(clauses, [&](const std::vector<int>& c) {
      return std::any_of(c.begin(), c.end(), [&](int l) { return pure.count(l) > 0; });
    });
    changed = true;
  }
  if (clauses.empty()) return trivially(true);

  // Renumber the surviving variables 1..n.
  std::map<int, int> rename;
  for (const auto& c : clauses) {
    for (int l : c) rename.emplace(std::abs(l), 0);
  }
  int n = 0;
  for (auto& [old, fresh] : rename) fresh = ++n;
  for (auto& c : clauses) {
    for (int& l : c) l = l > 0 ? rename[l] : -rename[-l];
  }

  // Split variables with more than three occurrences into a cycle of copies
  // x1 -> x2 -> ... -> xk -> x1, one copy per occurrence.
  CnfInstance out;
  out.clauses = clauses;
  const int base = n;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> where(static_cast<std::size_t>(base) + 1);
  for (std::size_t j = 0; j < out.clauses.size(); ++j) {
    for (std::size_t p = 0; p < out.clauses[j].size(); ++p) {
      where[static_cast<std::size_t>(std::abs(out.clauses[j][p]))].emplace_back(j, p);
    }
  }
  for (int v = 1; v <= base; ++v) {
    const auto& spots = where[static_cast<std::size_t>(v)];
    if (spots.size() <= 3) continue;
    std::vector<int> copies{v};
    for (std::size_t i = 1; i < spots.size(); ++i) copies.push_back(++n);
    for (std::size_t i = 0; i < spots.size(); ++i) {
      int& lit = out.clauses[spots[i].first][spots[i].second];
      lit = lit > 0 ? copies[i] : -copies[i];
    }
    for (std::size_t i = 0; i < copies.size(); ++i) {
      out.clauses.push_back({-copies[i], copies[(i + 1) % copies.size()]});
    }
  }

  // Force an odd variable count with a tautological dummy.
  if (n % 2 == 0) {
    ++n;
    out.clauses.push_back({n, -n});
  }
  out.variable_count = n;
  return out;
}

// ------------------------------------------------------------ 3SAT -> EPMX

namespace {

struct GadgetState {
  std::optional<bool> polarity;  // absent for the null state
  std::vector<std::size_t> clauses;
};

// Null state first, then the single-occurrence polarity, then subsets of the
// other polarity: both occurrences, first only, second only.
std::vector<GadgetState> gadget(const Occurrences& o) {
  std::vector<GadgetState> out{{std::nullopt, {}}};
  auto add_group = [&](bool polarity, const std::vector<std::size_t>& occ) {
    if (occ.size() == 1) {
      out.push_back({polarity, occ});
    } else if (occ.size() == 2) {
      out.push_back({polarity, occ});
      out.push_back({polarity, {occ[0]}});
      out.push_back({polarity, {occ[1]}});
    }
  };
  if (o.pos.size() <= o.neg.size()) {
    add_group(true, o.pos);
    add_group(false, o.neg);
  } else {
    add_group(false, o.neg);
    add_group(true, o.pos);
  }
  return out;
}

std::string state_name(std::size_t i) {
  return std::string(1, static_cast<char>('a' + i));
}

void require_restricted(const CnfInstance& cnf) {
  if (auto why = restriction_violation(cnf)) {
    fail(ErrorCode::Precondition, "restriction-violated: " + *why);
  }
}

void require_gadget_shape(const CnfInstance& cnf, const epmx::Instance& inst) {
  const auto n = static_cast<std::size_t>(cnf.variable_count);
  if (inst.variables.size() != 2 * n || inst.clauses.size() != cnf.clauses.size() + 2) {
    fail(ErrorCode::Precondition, "witness-invalid: EPMX instance was not built from this CNF");
  }
}

}  // namespace

epmx::Instance threesat_to_epmx(const CnfInstance& cnf) {
  require_restricted(cnf);
  const auto n = static_cast<std::size_t>(cnf.variable_count);
  const auto occ = occurrences(cnf);

  epmx::Instance inst;
  inst.clauses.assign(cnf.clauses.size(), {});
  epmx::Clause cx, cy;
  for (std::size_t v = 1; v <= n; ++v) {
    const auto states = gadget(occ[v]);
    epmx::Variable var{"x" + std::to_string(v), epmx::Side::X, {}};
    const std::size_t index = inst.variables.size();
    for (std::size_t s = 0; s < states.size(); ++s) {
      var.states.push_back(state_name(s));
      for (std::size_t j : states[s].clauses) inst.clauses[j].push_back({index, s});
      cx.push_back({index, s});
    }
    inst.variables.push_back(std::move(var));
  }
  for (std::size_t v = 1; v <= n; ++v) {
    const std::size_t index = inst.variables.size();
    inst.variables.push_back({"y" + std::to_string(v), epmx::Side::Y, {"a", "b"}});
    cy.push_back({index, 0});
    cy.push_back({index, 1});
  }
  inst.clauses.push_back(std::move(cx));
  inst.clauses.push_back(std::move(cy));
  return inst;
}

epmx::Assignment epmx_solution_from_sat(const CnfInstance& cnf, const BoolAssignment& sat,
                                        const epmx::Instance& inst) {
  require_restricted(cnf);
  require_gadget_shape(cnf, inst);
  if (sat.size() != static_cast<std::size_t>(cnf.variable_count) + 1 || !satisfies(cnf, sat)) {
    fail(ErrorCode::Precondition, "witness-invalid: assignment does not satisfy the CNF");
  }
  const auto n = static_cast<std::size_t>(cnf.variable_count);
  const auto occ = occurrences(cnf);
  std::vector<bool> covered(cnf.clauses.size(), false);
  epmx::Assignment out(inst.variables.size());

  for (std::size_t v = 1; v <= n; ++v) {
    const bool value = sat[v];
    std::vector<std::size_t> want;
    for (std::size_t j : value ? occ[v].pos : occ[v].neg) {
      if (!covered[j]) want.push_back(j);
    }
    const auto states = gadget(occ[v]);
    for (std::size_t s = 0; s < states.size(); ++s) {
      bool match = want.empty() ? !states[s].polarity
                                : states[s].polarity == value && states[s].clauses == want;
      if (match) {
        out[v - 1] = s;
        break;
      }
    }
    for (std::size_t j : want) covered[j] = true;
  }
  for (std::size_t v = n; v < 2 * n; ++v) out[v] = 0;
  return out;
}

BoolAssignment sat_from_epmx_solution(const CnfInstance& cnf, const epmx::Instance& inst,
                                      const epmx::Assignment& a) {
  require_restricted(cnf);
  require_gadget_shape(cnf, inst);
  const auto n = static_cast<std::size_t>(cnf.variable_count);
  const auto occ = occurrences(cnf);
  BoolAssignment out(n + 1, false);
  for (std::size_t v = 1; v <= n; ++v) {
    if (!a.at(v - 1)) fail(ErrorCode::Precondition, "incomplete-assignment");
    const auto states = gadget(occ[v]);
    out[v] = states.at(*a[v - 1]).polarity.value_or(false);
  }
  return out;
}

// ----------------------------------------------------- EPMX -> superstars

std::vector<StarTerm> StarReduction::terms() const {
  std::vector<StarTerm> out;
  for (const auto& x : x_games) out.emplace_back(x);
  for (const auto& y : y_games) out.emplace_back(y);
  out.emplace_back(tail);
  return out;
}

StarReduction epmx_to_superstars(const epmx::Instance& raw) {
  raw.validate();
  if (!raw.equal_partitioned()) {
    fail(ErrorCode::Precondition, "not-equal-partitioned: X and Y must own equally many variables");
  }
  const epmx::Instance inst = epmx::complete_missing_states(raw);
  const std::size_t m = inst.clauses.size();
  const std::size_t nx = inst.count(epmx::Side::X);
  if (m == 0) fail(ErrorCode::Precondition, "epmx: at least one clause is required");
  if (m + nx > kNimberWordBits) {
    fail(ErrorCode::Precondition, "word-overflow: " + std::to_string(m) + " clauses plus " +
                                      std::to_string(nx) + " X variables exceed " +
                                      std::to_string(kNimberWordBits) + " bits");
  }

  // Nimber of each (variable, state): nim-sum of the identities 2^t of the
  // clauses holding that literal.
  std::vector<std::vector<std::uint64_t>> value(inst.variables.size());
  for (std::size_t v = 0; v < inst.variables.size(); ++v) {
    value[v].assign(inst.variables[v].states.size(), 0);
  }
  for (std::size_t t = 0; t < m; ++t) {
    for (const auto& l : inst.clauses[t]) value[l.variable][l.state] ^= std::uint64_t{1} << t;
  }

  StarReduction out;
  std::size_t j = 0;
  for (std::size_t v = 0; v < inst.variables.size(); ++v) {
    Superstar::Indices options = value[v];
    if (inst.variables[v].owner == epmx::Side::X) {
      options.push_back(std::uint64_t{1} << (m + j++));
      out.x_games.emplace_back(std::move(options), Superstar::Indices{0});
    } else {
      out.y_games.emplace_back(Superstar::Indices{0}, std::move(options));
    }
  }
  out.tail = Nimber((std::uint64_t{1} << m) - 1);
  return out;
}

CometSum superstars_to_comets(std::span<const StarTerm> terms) {
  std::vector<CometSum> comets;
  for (const auto& t : terms) comets.push_back(comet_of(t));
  return comet_sum(comets);
}

// --------------------------------------------------------------- set cover

void SetCoverInstance::validate() const {
  if (element_count == 0) fail(ErrorCode::Parse, "set cover: no elements");
  if (k == 0) fail(ErrorCode::Parse, "set cover: k must be at least 1");
  for (const auto& s : sets) {
    if (s.empty()) fail(ErrorCode::Parse, "set cover: empty set");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 1 || s[i] > element_count) {
        fail(ErrorCode::Parse, "set cover: element " + std::to_string(s[i]) + " out of range");
      }
      if (i > 0 && s[i] <= s[i - 1]) fail(ErrorCode::Parse, "set cover: sets must be sorted and distinct");
    }
  }
}

SetCoverInstance setcover_to_pure(const SetCoverInstance& sc) {
  sc.validate();
  for (const auto& s : sc.sets) {
    if (s.size() != 3) fail(ErrorCode::Precondition, "not-3-uniform: every set must have 3 elements");
  }
  SetCoverInstance out{sc.element_count, {}, sc.k};
  std::set<std::vector<std::size_t>> seen;
  auto add = [&](std::vector<std::size_t> s) {
    if (seen.insert(s).second) out.sets.push_back(std::move(s));
  };
  for (const auto& s : sc.sets) add(s);
  for (const auto& s : sc.sets) {
    add({s[0]});
    add({s[1]});
    add({s[2]});
    add({s[0], s[1]});
    add({s[0], s[2]});
    add({s[1], s[2]});
  }
  return out;
}

blackout::Position pure_setcover_to_blackout(const SetCoverInstance& sc) {
  sc.validate();
  const std::size_t n = sc.sets.size();
  if (sc.k < 1 || sc.k >= n) {
    fail(ErrorCode::Precondition, "k-out-of-range: need 1 <= k < n (k = " + std::to_string(sc.k) +
                                      ", n = " + std::to_string(n) + ")");
  }
  const std::size_t m = sc.element_count;
  auto incidence = [m](const std::vector<std::size_t>& s) {
    blackout::Bits b(m);
    for (std::size_t e : s) b.set(e - 1);
    return b;
  };
  blackout::Position pos;
  pos.lights = blackout::Bits(m);
  pos.lights.set();
  for (const auto& s : sc.sets) pos.all_off.push_back(incidence(s));
  for (std::size_t i = 0; i + 1 < n - sc.k; ++i) pos.one_on.push_back(incidence(sc.sets.front()));
  pos.one_on.push_back(pos.lights);
  pos.pass_budget = sc.k;
  pos.to_move = blackout::kAllOff;
  return pos;
}

// ----------------------------------------------------------------- oracles

std::optional<BoolAssignment> oracle_sat(const CnfInstance& cnf, OracleLimits limits) {
  cnf.validate();
  const auto n = static_cast<std::size_t>(cnf.variable_count);
  if (n > limits.max_variables) {
    fail(ErrorCode::BudgetExceeded, "budget-exceeded: " + std::to_string(n) +
                                        " variables is beyond exhaustive search");
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> masks;
  for (const auto& c : cnf.clauses) {
    std::uint64_t pos = 0, neg = 0;
    for (int l : c) (l > 0 ? pos : neg) |= std::uint64_t{1} << (std::abs(l) - 1);
    masks.emplace_back(pos, neg);
  }
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
    bool ok = std::all_of(masks.begin(), masks.end(), [a](const auto& pn) {
      return ((a & pn.first) | (~a & pn.second)) != 0;
    });
    if (ok) {
      BoolAssignment out(n + 1, false);
      for (std::size_t v = 1; v <= n; ++v) out[v] = (a >> (v - 1)) & 1;
      return out;
    }
  }
  return std::nullopt;
}

namespace {

struct CoverSearch {
  std::vector<std::uint64_t> sets;
  std::uint64_t full = 0;
  bool exact = false;
  std::vector<std::size_t> chosen;

  bool dfs(std::uint64_t covered, std::size_t budget) {
    if (covered == full) return true;
    if (budget == 0) return false;
    const int e = __builtin_ctzll(~covered & full);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (!((sets[i] >> e) & 1)) continue;
      if (exact && (sets[i] & covered)) continue;
      chosen.push_back(i);
      if (dfs(covered | sets[i], budget - 1)) return true;
      chosen.pop_back();
    }
    return false;
  }
};

CoverSearch make_search(const SetCoverInstance& sc, OracleLimits limits, bool exact) {
  sc.validate();
  if (sc.element_count > 64 || sc.sets.size() > limits.max_sets) {
    fail(ErrorCode::BudgetExceeded, "budget-exceeded: set cover instance too large for exhaustive search");
  }
  CoverSearch s;
  s.exact = exact;
  s.full = sc.element_count == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << sc.element_count) - 1;
  for (const auto& set : sc.sets) {
    std::uint64_t mask = 0;
    for (std::size_t e : set) mask |= std::uint64_t{1} << (e - 1);
    s.sets.push_back(mask);
  }
  return s;
}

}  // namespace

std::optional<std::vector<std::size_t>> oracle_cover(const SetCoverInstance& sc, std::size_t k,
                                                     OracleLimits limits) {
  CoverSearch s = make_search(sc, limits, false);
  for (std::size_t size = 0; size <= std::min(k, sc.sets.size()); ++size) {
    s.chosen.clear();
    if (s.dfs(0, size)) return s.chosen;
  }
  return std::nullopt;
}

std::optional<std::size_t> oracle_min_cover(const SetCoverInstance& sc, OracleLimits limits) {
  if (auto c = oracle_cover(sc, sc.sets.size(), limits)) return c->size();
  return std::nullopt;
}

std::optional<std::vector<std::size_t>> oracle_exact_cover(const SetCoverInstance& sc,
                                                           std::size_t k, OracleLimits limits) {
  CoverSearch s = make_search(sc, limits, true);
  for (std::size_t size = 0; size <= std::min(k, sc.sets.size()); ++size) {
    s.chosen.clear();
    if (s.dfs(0, size)) return s.chosen;
  }
  return std::nullopt;
}

}  // namespace sstar::reductions
