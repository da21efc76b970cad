#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blackout.hpp"
#include "epmx.hpp"
#include "superstar.hpp"

namespace sstar::reductions {

/// CNF over variables 1..variable_count; literals are signed DIMACS integers.
struct CnfInstance {
  int variable_count = 0;
  std::vector<std::vector<int>> clauses;

  /// Throws Parse on out-of-range or zero literals.
  void validate() const;
  friend bool operator==(const CnfInstance&, const CnfInstance&) = default;
};

CnfInstance parse_dimacs(std::string_view text);
std::string to_dimacs(const CnfInstance& cnf);

/// Truth value per variable, index 0 unused.
using BoolAssignment = std::vector<bool>;

bool satisfies(const CnfInstance& cnf, const BoolAssignment& a);

/// Why cnf is not in the restricted form, or absent if it is: non-empty
/// clauses of at most three distinct literals, every variable occurring at
/// most three times with both polarities, and an odd variable count.
std::optional<std::string> restriction_violation(const CnfInstance& cnf);

/// An equisatisfiable instance in the restricted form. Conforming input is
/// returned unchanged.
CnfInstance normalize_3sat(const CnfInstance& cnf);

/// Per CNF variable: one X variable with a null state `a`, followed by one
/// state per non-empty subset of each polarity's occurrence clauses (the
/// single-occurrence polarity first). Then n two-state Y dummies, one EPMX
/// clause per CNF clause, and the parity clauses c_x and c_y.
/// Throws Precondition ("restriction-violated").
epmx::Instance threesat_to_epmx(const CnfInstance& cnf);

/// Greedy witness: each variable covers exactly the satisfied clauses of its
/// true polarity that are not yet covered. Y dummies take their first state.
/// Throws Precondition ("witness-invalid") if sat does not satisfy cnf.
epmx::Assignment epmx_solution_from_sat(const CnfInstance& cnf, const BoolAssignment& sat,
                                        const epmx::Instance& inst);

/// Backward map: a variable is true iff its state covers positive occurrences.
BoolAssignment sat_from_epmx_solution(const CnfInstance& cnf, const epmx::Instance& inst,
                                      const epmx::Assignment& a);

/// x_0 + ... + x_k + y_0 + ... + y_l + *(2^m - 1).
struct StarReduction {
  std::vector<Superstar> x_games;
  std::vector<Superstar> y_games;
  Nimber tail;

  std::vector<StarTerm> terms() const;
};

/// Clause t gets identity 2^t; each state becomes the nimber summing the
/// identities of the clauses it appears in; X games also get *2^(m+j).
/// Throws Precondition ("not-equal-partitioned", "word-overflow").
StarReduction epmx_to_superstars(const epmx::Instance& inst);

/// Throws Precondition ("undefined-comet") unless every term is left-0,
/// right-0 or a nimber.
CometSum superstars_to_comets(std::span<const StarTerm> terms);

/// Elements are 1..element_count; each set is sorted and non-empty.
struct SetCoverInstance {
  std::size_t element_count = 0;
  std::vector<std::vector<std::size_t>> sets;
  std::size_t k = 1;

  void validate() const;
  friend bool operator==(const SetCoverInstance&, const SetCoverInstance&) = default;
};

/// Adds every non-empty proper subset of every (3-element) set after the
/// originals, without duplicates. Throws Precondition ("not-3-uniform").
SetCoverInstance setcover_to_pure(const SetCoverInstance& sc);

/// One light per element, all on; AllOff switches are the sets; OneOn holds
/// n-k-1 copies of the first set plus one all-lights switch. AllOff moves
/// first and OneOn may pass k times. Throws Precondition ("k-out-of-range").
blackout::Position pure_setcover_to_blackout(const SetCoverInstance& sc);

struct OracleLimits {
  std::size_t max_variables = 24;
  std::size_t max_sets = 24;
};

/// Exhaustive satisfiability. Throws BudgetExceeded past the limits.
std::optional<BoolAssignment> oracle_sat(const CnfInstance& cnf, OracleLimits limits = {});

/// Size of a smallest cover, or absent if the sets do not cover everything.
std::optional<std::size_t> oracle_min_cover(const SetCoverInstance& sc, OracleLimits limits = {});

/// Indices of a cover using at most k sets, smallest first.
std::optional<std::vector<std::size_t>> oracle_cover(const SetCoverInstance& sc, std::size_t k,
                                                     OracleLimits limits = {});

/// Indices of an exact cover (every element exactly once) of at most k sets.
std::optional<std::vector<std::size_t>> oracle_exact_cover(const SetCoverInstance& sc,
                                                           std::size_t k,
                                                           OracleLimits limits = {});

}  // namespace sstar::reductions
