#pragma once
// Worked instances and generators shared by the unit tests and the
// acceptance binary.

#include <functional>
#include <random>
#include <vector>

#include "epmx.hpp"
#include "reductions.hpp"

namespace fixtures {

using sstar::epmx::Instance;
using sstar::epmx::Side;
using sstar::reductions::CnfInstance;

// Four clauses over x0,x1 / y0,y1; reduces to
// {*1,*2,*16|0}+{*4,*7,*32|0}+{0|*1,*2}+{0|*8,*9,*10}+*15.
inline Instance worked_epmx() {
  Instance inst;
  inst.variables = {{"x0", Side::X, {"a", "b"}},
                    {"x1", Side::X, {"a", "b"}},
                    {"y0", Side::Y, {"a", "b"}},
                    {"y1", Side::Y, {"a", "b", "c"}}};
  inst.clauses = {{{0, 0}, {1, 0}, {2, 0}, {3, 2}},
                  {{0, 1}, {1, 0}, {2, 1}, {3, 0}},
                  {{1, 0}, {1, 1}},
                  {{3, 0}, {3, 1}, {3, 2}}};
  return inst;
}

inline const char* worked_epmx_json() {
  return R"({"variables":[{"name":"x0","owner":"X","states":["a","b"]},)"
         R"({"name":"x1","owner":"X","states":["a","b"]},)"
         R"({"name":"y0","owner":"Y","states":["a","b"]},)"
         R"({"name":"y1","owner":"Y","states":["a","b","c"]}],)"
         R"("clauses":[[["x0","a"],["x1","a"],["y0","a"],["y1","c"]],)"
         R"([["x0","b"],["x1","a"],["y0","b"],["y1","a"]],)"
         R"([["x1","a"],["x1","b"]],[["y1","a"],["y1","b"],["y1","c"]]],"firstPlayer":"X"})";
}

inline constexpr const char* kWorkedSum = "{*1,*2,*16|0}+{*4,*7,*32|0}+{0|*1,*2}+{0|*8,*9,*10}+*15";

// Every clause of 1..3 distinct literals over variables 1..n.
inline std::vector<std::vector<int>> all_clauses(int n) {
  std::vector<int> lits;
  for (int v = 1; v <= n; ++v) {
    lits.push_back(-v);
    lits.push_back(v);
  }
  std::vector<std::vector<int>> out;
  std::function<void(std::size_t, std::vector<int>&)> grow = [&](std::size_t from, std::vector<int>& cur) {
    if (!cur.empty()) out.push_back(cur);
    if (cur.size() == 3) return;
    for (std::size_t i = from; i < lits.size(); ++i) {
      cur.push_back(lits[i]);
      grow(i + 1, cur);
      cur.pop_back();
    }
  };
  std::vector<int> cur;
  grow(0, cur);
  return out;
}

// Every restricted CNF with exactly n variables (n odd) and at most
// max_clauses clauses, clauses taken as a multiset in canonical order.
inline std::vector<CnfInstance> restricted_family(int n, std::size_t max_clauses) {
  const auto pool = all_clauses(n);
  std::vector<CnfInstance> out;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    if (!pick.empty()) {
      CnfInstance cnf{n, {}};
      for (auto i : pick) cnf.clauses.push_back(pool[i]);
      if (!sstar::reductions::restriction_violation(cnf)) out.push_back(cnf);
    }
    if (pick.size() == max_clauses) return;
    for (std::size_t i = from; i < pool.size(); ++i) {
      pick.push_back(i);
      grow(i);
      pick.pop_back();
    }
  };
  grow(0);
  return out;
}

// Random restricted CNF with up to max_vars variables and max_clauses
// clauses, by rejection sampling.
inline CnfInstance random_restricted(std::mt19937_64& rng, int max_vars, std::size_t max_clauses) {
  for (;;) {
    int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_vars));
    if (n % 2 == 0) --n;
    const auto pool = all_clauses(n);
    CnfInstance cnf{n, {}};
    const std::size_t count = 1 + rng() % max_clauses;
    for (std::size_t c = 0; c < count; ++c) cnf.clauses.push_back(pool[rng() % pool.size()]);
    if (!sstar::reductions::restriction_violation(cnf)) return cnf;
  }
}

}  // namespace fixtures
