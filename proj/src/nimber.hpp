#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sstar {

/// The nimber *n. Values are bounded by one machine word.
struct Nimber {
  std::uint64_t value = 0;

  constexpr Nimber() = default;
  constexpr explicit Nimber(std::uint64_t v) : value(v) {}

  constexpr bool is_zero() const { return value == 0; }

  friend constexpr auto operator<=>(Nimber, Nimber) = default;

  /// Disjunctive sum of two nimbers.
  friend constexpr Nimber operator+(Nimber a, Nimber b) {
    return Nimber(a.value ^ b.value);
  }
};

/// Largest bit position a nimber index may use when built from powers of two.
inline constexpr unsigned kNimberWordBits = 63;

std::vector<Nimber> nimber_options(Nimber n);

Nimber nim_sum(std::span<const Nimber> values);

/// Least non-negative integer absent from `values` (duplicates allowed).
std::uint64_t mex(std::span<const std::uint64_t> values);

/// `0` or `*N`.
std::string to_string(Nimber n);

}  // namespace sstar
