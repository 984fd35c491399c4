#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "neutralscape/evaluation.hpp"

namespace neutralscape {

class Rng;

enum class MoveKind : std::uint8_t { insertion, transpose, exchange };

std::string_view to_string(MoveKind kind) noexcept;

/// insertion: the job at position a is moved so that it ends at position b (a != b).
/// transpose: positions a and a+1 are swapped (b == a + 1).
/// exchange: positions a and b are swapped (a < b).
struct Move {
  MoveKind kind = MoveKind::insertion;
  std::uint32_t a = 0;
  std::uint32_t b = 0;

  friend bool operator==(const Move&, const Move&) = default;
};

bool is_valid(const Move& move, std::size_t n) noexcept;

/// Canonical insertion moves exclude (a, a+1): it yields the same neighbor as (a+1, a).
inline bool is_canonical_insertion(std::size_t a, std::size_t b) noexcept {
  return a != b && b != a + 1;
}

Move inverse(const Move& move) noexcept;

/// Throws ContractViolation when the move is invalid for the permutation size.
Permutation apply_move(const Permutation& perm, const Move& move);
void apply_move_in_place(Permutation& perm, const Move& move);

/// The (n-1)^2 canonical insertion moves, ordered by a then b. Empty for n < 2.
std::vector<Move> enumerate_insertion_moves(std::size_t n);

/// Uniform over the canonical move set of `kind`. Requires n >= 2.
Move random_move(MoveKind kind, std::size_t n, Rng& rng);

inline std::uint64_t insertion_neighborhood_size(std::size_t n) noexcept {
  return n < 2 ? 0 : static_cast<std::uint64_t>(n - 1) * (n - 1);
}

}  // namespace neutralscape
