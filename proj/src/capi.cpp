#include "sstar.h"

#include <chrono>
#include <random>
#include <string>

#include "error.hpp"
#include "formats.hpp"
#include "game.hpp"
#include "service.hpp"
#include "superstar.hpp"

using sstar::ErrorCode;
using sstar::formats::Json;
namespace red = sstar::reductions;

struct sstar_context {
  std::uint64_t budget = 10'000'000;
  std::uint64_t seed = 1;
  std::string error;
  std::string output;
  std::string certificate;
};

struct sstar_solver {
  explicit sstar_solver(std::uint64_t budget) : solver({.node_budget = budget}) {}
  sstar::Solver solver;
  std::string error;
};

namespace {

sstar_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return SSTAR_E_PARSE;
    case ErrorCode::Precondition: return SSTAR_E_PRECONDITION;
    case ErrorCode::BudgetExceeded: return SSTAR_E_BUDGET;
    case ErrorCode::IllegalMove: return SSTAR_E_ILLEGAL_MOVE;
    case ErrorCode::NotFound: return SSTAR_E_NOT_FOUND;
    case ErrorCode::Io: return SSTAR_E_IO;
  }
  return SSTAR_E_INTERNAL;
}

// Runs f, translating exceptions into a status and an error message.
template <typename F>
sstar_status guarded(std::string& error, F&& f) {
  error.clear();
  try {
    f();
    return SSTAR_OK;
  } catch (const sstar::Error& e) {
    error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    error = std::string("parse-error: ") + e.what();
    return SSTAR_E_PARSE;
  } catch (const std::exception& e) {
    error = std::string("internal error: ") + e.what();
    return SSTAR_E_INTERNAL;
  } catch (...) {
    error = "internal error";
    return SSTAR_E_INTERNAL;
  }
}

template <typename F>
sstar_status run(sstar_context* ctx, F&& f) {
  if (ctx == nullptr) return SSTAR_E_USAGE;
  ctx->output.clear();
  ctx->certificate.clear();
  return guarded(ctx->error, std::forward<F>(f));
}

std::string require(const char* s, const char* what) {
  if (s == nullptr) sstar::fail(ErrorCode::Parse, std::string(what) + " is missing");
  return s;
}

[[noreturn]] void unknown(const char* family, const std::string& kind) {
  sstar::fail(ErrorCode::NotFound, std::string("unknown ") + family + " kind '" + kind + "'");
}

Json literals(const red::BoolAssignment& a) {
  Json out = Json::array();
  for (std::size_t v = 1; v < a.size(); ++v) out.push_back(a[v] ? static_cast<int>(v) : -static_cast<int>(v));
  return out;
}

bool within_oracle(const red::SetCoverInstance& sc) { return sc.sets.size() <= red::OracleLimits{}.max_sets; }

// ----------------------------------------------------------------- reduce

void reduce_3sat_to_epmx(sstar_context* ctx, const std::string& input) {
  const auto cnf = red::parse_dimacs(input);
  const auto inst = red::threesat_to_epmx(cnf);
  ctx->output = sstar::formats::to_json(inst, sstar::epmx::Side::X).dump(2);

  Json cert = {{"kind", "3sat-to-epmx"}, {"variables", cnf.variable_count}, {"clauses", cnf.clauses.size()}};
  if (static_cast<std::size_t>(cnf.variable_count) > red::OracleLimits{}.max_variables) {
    cert["satisfiable"] = nullptr;
    cert["note"] = "beyond exhaustive oracle limits";
  } else if (auto sat = red::oracle_sat(cnf)) {
    auto forward = red::epmx_solution_from_sat(cnf, *sat, inst);
    auto back = red::sat_from_epmx_solution(cnf, inst, forward);
    cert["satisfiable"] = true;
    cert["satAssignment"] = literals(*sat);
    cert["epmxAssignment"] = sstar::formats::assignment_to_json(inst, forward);
    cert["epmxAssignmentValid"] = sstar::epmx::evaluate(inst, forward);
    cert["backAssignment"] = literals(back);
    cert["backAssignmentValid"] = red::satisfies(cnf, back);
  } else {
    cert["satisfiable"] = false;
  }
  ctx->certificate = cert.dump(2);
}

void reduce_epmx_to_stars(sstar_context* ctx, const std::string& input) {
  const auto doc = sstar::formats::epmx_from_json(sstar::formats::parse_json(input));
  const auto red_out = red::epmx_to_superstars(doc.instance);
  const auto terms = red_out.terms();
  ctx->output = sstar::to_text(terms);

  const auto completed = sstar::epmx::complete_missing_states(doc.instance);
  Json identities = Json::array();
  for (std::size_t t = 0; t < completed.clauses.size(); ++t) identities.push_back(std::uint64_t{1} << t);
  Json vars = Json::array();
  std::size_t xi = 0, yi = 0;
  for (const auto& v : completed.variables) {
    const bool is_x = v.owner == sstar::epmx::Side::X;
    const auto& term = is_x ? red_out.x_games.at(xi++) : red_out.y_games.at(yi++);
    vars.push_back({{"variable", v.name}, {"owner", std::string(to_string(v.owner))}, {"term", term.to_string()}});
  }
  Json cert = {{"kind", "epmx-to-stars"},
               {"clauseIdentities", identities},
               {"addedClauses", completed.clauses.size() - doc.instance.clauses.size()},
               {"terms", vars},
               {"tail", to_string(red_out.tail)}};
  const auto first = doc.first_player.value_or(sstar::epmx::Side::X);
  cert["firstPlayer"] = std::string(to_string(first));
  try {
    cert["epmxWinner"] = std::string(to_string(sstar::epmx::solve(doc.instance, first, {.node_budget = ctx->budget})));
    // What the sum encodes: Left wins moving second iff X wins with Y opening.
    cert["xWinsWithYFirst"] =
        sstar::epmx::solve(doc.instance, sstar::epmx::Side::Y, {.node_budget = ctx->budget}) == sstar::epmx::Side::X;
  } catch (const sstar::Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    cert["epmxWinner"] = nullptr;
    cert["xWinsWithYFirst"] = nullptr;
  }
  ctx->certificate = cert.dump(2);
}

void reduce_stars_to_comets(sstar_context* ctx, const std::string& input) {
  const auto terms = sstar::parse_star_sum(input);
  Json parts = Json::array();
  for (const auto& t : terms) {
    auto c = sstar::comet_of(t);
    parts.push_back({{"term", sstar::to_text(std::span(&t, 1))},
                     {"class", std::string(to_string(sstar::classify(t)))},
                     {"upCount", c.up_count},
                     {"starParity", c.star_parity}});
  }
  const auto sum = red::superstars_to_comets(terms);
  ctx->output = Json{{"upCount", sum.up_count},
                     {"starParity", sum.star_parity},
                     {"sum", sstar::to_text(sum.parts)},
                     {"expanded", sstar::to_text(sstar::expand(sum))}}
                    .dump(2);
  ctx->certificate = Json{{"kind", "stars-to-comets"}, {"terms", parts}}.dump(2);
}

void reduce_setcover_to_pure(sstar_context* ctx, const std::string& input) {
  const auto sc = sstar::formats::setcover_from_json(sstar::formats::parse_json(input));
  const auto pure = red::setcover_to_pure(sc);
  ctx->output = sstar::formats::to_json(pure).dump(2);

  Json cert = {{"kind", "setcover-to-pure"}, {"originalSets", sc.sets.size()}, {"pureSets", pure.sets.size()}};
  if (within_oracle(pure)) {
    auto opt = [](std::optional<std::size_t> v) { return v ? Json(*v) : Json(); };
    cert["minCoverOriginal"] = opt(red::oracle_min_cover(sc));
    cert["minCoverPure"] = opt(red::oracle_min_cover(pure));
    auto exact = red::oracle_exact_cover(pure, pure.k);
    cert["exactCover"] = exact ? Json(*exact) : Json();
  } else {
    cert["note"] = "beyond exhaustive oracle limits";
  }
  ctx->certificate = cert.dump(2);
}

void reduce_pure_to_blackout(sstar_context* ctx, const std::string& input) {
  const auto sc = sstar::formats::setcover_from_json(sstar::formats::parse_json(input));
  const auto pos = red::pure_setcover_to_blackout(sc);
  ctx->output = sstar::formats::to_json(pos).dump(2);

  Json cert = {{"kind", "pure-to-blackout"}, {"k", sc.k}};
  if (within_oracle(sc)) {
    auto cover = red::oracle_cover(sc, sc.k);
    cert["cover"] = cover ? Json(*cover) : Json();
  }
  // Optimal play trace: the winner follows the solver, the loser its first legal move.
  try {
    sstar::blackout::Solver solver({.node_budget = ctx->budget});
    const auto winner = solver.solve(pos);
    Json trace = Json::array();
    auto cur = pos;
    while (!sstar::blackout::loser_if_stuck(cur)) {
      std::optional<sstar::blackout::Move> m;
      if (cur.to_move == winner) m = solver.winning_move(cur);
      if (!m) m = sstar::blackout::legal_moves(cur).front();
      trace.push_back(sstar::formats::to_json(*m));
      cur = sstar::blackout::apply_move(cur, *m);
    }
    cert["winner"] = std::string(sstar::blackout::role_name(winner));
    cert["trace"] = trace;
    cert["finalLights"] = sstar::blackout::to_string(cur.lights);
  } catch (const sstar::Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    cert["winner"] = nullptr;
  }
  ctx->certificate = cert.dump(2);
}

// ------------------------------------------------------------------ solve

std::string solve_sum(sstar_context* ctx, const sstar::SumPosition& sum, const char* first) {
  sstar::Solver solver({.node_budget = ctx->budget});
  if (first == nullptr) return std::string(to_string(solver.outcome(sum)));
  const auto p = sstar::formats::parse_player(first);
  return std::string(to_string(solver.wins_moving_first(sum, p) ? p : sstar::opponent(p)));
}

// ------------------------------------------------------------------ bench

template <typename F>
double seconds(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void bench_nimsum(sstar_context* ctx, std::uint64_t n) {
  if (n == 0) n = 1'000'000;
  std::mt19937_64 rng(ctx->seed);
  std::vector<sstar::Nimber> values(n);
  for (auto& v : values) v = sstar::Nimber(rng() >> 1);
  sstar::Nimber result;
  double t = seconds([&] { result = sstar::nim_sum(values); });
  ctx->output = Json{{"bench", "nimsum"}, {"size", n}, {"seconds", t}, {"result", result.value}}.dump();
}

void bench_gf2(sstar_context* ctx, std::uint64_t n) {
  if (n == 0) n = 512;
  std::mt19937_64 rng(ctx->seed);
  auto random_bits = [&] {
    sstar::blackout::Bits b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = rng() & 1;
    return b;
  };
  std::vector<sstar::blackout::Bits> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back(random_bits());
  const auto target = random_bits();
  std::optional<std::vector<std::size_t>> result;
  double t = seconds([&] { result = sstar::blackout::gf2_solve(target, rows); });
  ctx->output = Json{{"bench", "gf2"}, {"size", n}, {"seconds", t}, {"solvable", result.has_value()}}.dump();
}

void bench_solver(sstar_context* ctx, std::uint64_t n) {
  if (n == 0) n = 6;
  std::mt19937_64 rng(ctx->seed);
  std::vector<sstar::StarTerm> terms;
  auto side = [&] {
    sstar::Superstar::Indices s;
    for (std::uint64_t i = 0; i < 6; ++i) {
      if (rng() % 2) s.push_back(i);
    }
    if (s.empty()) s.push_back(rng() % 6);
    return s;
  };
  for (std::uint64_t i = 0; i < n; ++i) terms.emplace_back(sstar::Superstar(side(), side()));
  const auto sum = sstar::to_sum(terms);
  sstar::Solver solver({.node_budget = ctx->budget});
  sstar::OutcomeClass first{}, second{};
  double t1 = seconds([&] { first = solver.outcome(sum); });
  double t2 = seconds([&] { second = solver.outcome(sum); });
  ctx->output = Json{{"bench", "solver"},
                     {"size", n},
                     {"sum", sstar::to_text(terms)},
                     {"outcome", std::string(to_string(first))},
                     {"consistent", first == second},
                     {"firstSeconds", t1},
                     {"secondSeconds", t2},
                     {"speedup", t2 > 0 ? t1 / t2 : 0.0}}
                    .dump();
}

}  // namespace

extern "C" {

const char* sstar_version(void) { return "0.1.0"; }

const char* sstar_status_name(sstar_status status) {
  switch (status) {
    case SSTAR_OK: return "ok";
    case SSTAR_E_USAGE: return "usage";
    case SSTAR_E_PARSE: return "parse-error";
    case SSTAR_E_PRECONDITION: return "precondition-violated";
    case SSTAR_E_BUDGET: return "budget-exceeded";
    case SSTAR_E_ILLEGAL_MOVE: return "illegal-move";
    case SSTAR_E_NOT_FOUND: return "not-found";
    case SSTAR_E_IO: return "io-error";
    case SSTAR_E_INTERNAL: return "internal";
  }
  return "unknown";
}

sstar_context* sstar_context_new(void) { return new (std::nothrow) sstar_context(); }
void sstar_context_free(sstar_context* ctx) { delete ctx; }

void sstar_context_set_budget(sstar_context* ctx, uint64_t budget) {
  if (ctx) ctx->budget = budget;
}
void sstar_context_set_seed(sstar_context* ctx, uint64_t seed) {
  if (ctx) ctx->seed = seed;
}

const char* sstar_last_error(const sstar_context* ctx) { return ctx ? ctx->error.c_str() : "null context"; }
const char* sstar_output(const sstar_context* ctx) { return ctx ? ctx->output.c_str() : ""; }
const char* sstar_certificate(const sstar_context* ctx) { return ctx ? ctx->certificate.c_str() : ""; }

sstar_status sstar_reduce(sstar_context* ctx, const char* kind_c, const char* input_c) {
  return run(ctx, [&] {
    const std::string kind = require(kind_c, "reduction kind");
    const std::string input = require(input_c, "input");
    if (kind == "normalize-3sat") {
      const auto cnf = red::parse_dimacs(input);
      const auto out = red::normalize_3sat(cnf);
      ctx->output = red::to_dimacs(out);
      ctx->certificate = Json{{"kind", kind},
                              {"inputVariables", cnf.variable_count},
                              {"outputVariables", out.variable_count},
                              {"unchanged", !red::restriction_violation(cnf).has_value()}}
                             .dump(2);
    } else if (kind == "3sat-to-epmx") {
      reduce_3sat_to_epmx(ctx, input);
    } else if (kind == "epmx-to-stars") {
      reduce_epmx_to_stars(ctx, input);
    } else if (kind == "stars-to-comets") {
      reduce_stars_to_comets(ctx, input);
    } else if (kind == "setcover-to-pure") {
      reduce_setcover_to_pure(ctx, input);
    } else if (kind == "pure-to-blackout") {
      reduce_pure_to_blackout(ctx, input);
    } else {
      unknown("reduce", kind);
    }
  });
}

sstar_status sstar_solve(sstar_context* ctx, const char* kind_c, const char* input_c, const char* first) {
  return run(ctx, [&] {
    const std::string kind = require(kind_c, "solve kind");
    const std::string input = require(input_c, "input");
    if (kind == "stars") {
      ctx->output = solve_sum(ctx, sstar::to_sum(sstar::parse_star_sum(input)), first);
    } else if (kind == "paintcan") {
      std::string text = input;
      while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
      ctx->output = solve_sum(ctx, sstar::paintcan::position_value(sstar::paintcan::parse_position(text)), first);
    } else if (kind == "epmx") {
      const auto doc = sstar::formats::epmx_from_json(sstar::formats::parse_json(input));
      auto side = first ? sstar::formats::parse_side(first) : doc.first_player.value_or(sstar::epmx::Side::X);
      ctx->output = std::string(to_string(sstar::epmx::solve(doc.instance, side, {.node_budget = ctx->budget})));
    } else if (kind == "blackout") {
      auto pos = sstar::formats::blackout_from_json(sstar::formats::parse_json(input));
      if (first) pos.to_move = sstar::formats::parse_player(first);
      sstar::blackout::Solver solver({.node_budget = ctx->budget});
      ctx->output = std::string(sstar::blackout::role_name(solver.solve(pos)));
    } else {
      unknown("solve", kind);
    }
  });
}

sstar_status sstar_oracle(sstar_context* ctx, const char* kind_c, const char* input_c) {
  return run(ctx, [&] {
    const std::string kind = require(kind_c, "oracle kind");
    const std::string input = require(input_c, "input");
    auto indices = [](const char* word, const std::optional<std::vector<std::size_t>>& sets) {
      if (!sets) return std::string("no");
      std::string out = word;
      for (auto i : *sets) out += " " + std::to_string(i);
      return out;
    };
    if (kind == "sat") {
      auto sat = red::oracle_sat(red::parse_dimacs(input));
      if (!sat) {
        ctx->output = "UNSAT";
      } else {
        ctx->output = "SAT";
        for (int l : literals(*sat)) ctx->output += " " + std::to_string(l);
      }
    } else if (kind == "restricted") {
      auto why = red::restriction_violation(red::parse_dimacs(input));
      ctx->output = why ? "violated: " + *why : "restricted";
    } else {
      const auto sc = sstar::formats::setcover_from_json(sstar::formats::parse_json(input));
      if (kind == "min-cover") {
        auto n = red::oracle_min_cover(sc);
        ctx->output = n ? std::to_string(*n) : "none";
      } else if (kind == "cover") {
        ctx->output = indices("yes", red::oracle_cover(sc, sc.k));
      } else if (kind == "exact-cover") {
        ctx->output = indices("yes", red::oracle_exact_cover(sc, sc.k));
      } else {
        unknown("oracle", kind);
      }
    }
  });
}

sstar_status sstar_bench(sstar_context* ctx, const char* kind_c, uint64_t size) {
  return run(ctx, [&] {
    const std::string kind = require(kind_c, "bench kind");
    if (kind == "nimsum") {
      bench_nimsum(ctx, size);
    } else if (kind == "gf2") {
      bench_gf2(ctx, size);
    } else if (kind == "solver") {
      bench_solver(ctx, size);
    } else {
      unknown("bench", kind);
    }
  });
}

sstar_status sstar_serve(sstar_context* ctx, const char* host, int port, const char* static_dir,
                         const char* persist_path) {
  return run(ctx, [&] {
    sstar::service::ServiceOptions opts;
    opts.ai_budget = ctx->budget;
    if (persist_path) opts.persist_path = persist_path;
    sstar::service::GameService service(opts);
    sstar::service::ServerOptions server;
    if (host) server.host = host;
    server.port = port;
    if (static_dir) server.static_dir = static_dir;
    sstar::service::serve(service, server);
  });
}

sstar_solver* sstar_solver_new(uint64_t budget) { return new (std::nothrow) sstar_solver(budget); }
void sstar_solver_free(sstar_solver* solver) { delete solver; }

sstar_status sstar_solver_outcome(sstar_solver* solver, const char* sum, char* outcome) {
  if (solver == nullptr || outcome == nullptr) return SSTAR_E_USAGE;
  return guarded(solver->error, [&] {
    auto o = solver->solver.outcome(sstar::parse_sum(require(sum, "sum")));
    *outcome = to_string(o)[0];
  });
}

size_t sstar_solver_memo_size(const sstar_solver* solver) { return solver ? solver->solver.memo_size() : 0; }
const char* sstar_solver_last_error(const sstar_solver* solver) {
  return solver ? solver->error.c_str() : "null solver";
}

}  // extern "C"
