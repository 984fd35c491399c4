#include "neutralscape/neighborhood.hpp"

#include "neutralscape/error.hpp"
#include "neutralscape/rng.hpp"

namespace neutralscape {

std::string_view to_string(MoveKind kind) noexcept {
  switch (kind) {
    case MoveKind::insertion: return "insertion";
    case MoveKind::transpose: return "transpose";
    case MoveKind::exchange: return "exchange";
  }
  return "unknown";
}

bool is_valid(const Move& move, std::size_t n) noexcept {
  if (move.a >= n || move.b >= n) return false;
  switch (move.kind) {
    case MoveKind::insertion: return move.a != move.b;
    case MoveKind::transpose: return move.b == move.a + 1;
    case MoveKind::exchange: return move.a < move.b;
  }
  return false;
}

Move inverse(const Move& move) noexcept {
  if (move.kind == MoveKind::insertion) return {MoveKind::insertion, move.b, move.a};
  return move;
}

void apply_move_in_place(Permutation& perm, const Move& move) {
  if (!is_valid(move, perm.size())) {
    throw ContractViolation(std::string("invalid ") + std::string(to_string(move.kind)) +
                            " move (" + std::to_string(move.a) + ", " + std::to_string(move.b) +
                            ") for size " + std::to_string(perm.size()));
  }
  if (move.kind == MoveKind::insertion) {
    perm.insert(move.a, move.b);
  } else {
    perm.swap_positions(move.a, move.b);
  }
}

Permutation apply_move(const Permutation& perm, const Move& move) {
  Permutation out = perm;
  apply_move_in_place(out, move);
  return out;
}

std::vector<Move> enumerate_insertion_moves(std::size_t n) {
  std::vector<Move> moves;
  if (n < 2) return moves;
  moves.reserve(insertion_neighborhood_size(n));
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      if (is_canonical_insertion(a, b)) moves.push_back({MoveKind::insertion, a, b});
    }
  }
  return moves;
}

Move random_move(MoveKind kind, std::size_t n, Rng& rng) {
  if (n < 2) throw ContractViolation("random_move needs at least two positions");
  switch (kind) {
    case MoveKind::insertion: {
      for (;;) {
        const auto a = static_cast<std::uint32_t>(rng.below(n));
        const auto b = static_cast<std::uint32_t>(rng.below(n));
        if (is_canonical_insertion(a, b)) return {MoveKind::insertion, a, b};
      }
    }
    case MoveKind::transpose: {
      const auto a = static_cast<std::uint32_t>(rng.below(n - 1));
      return {MoveKind::transpose, a, a + 1};
    }
    case MoveKind::exchange: {
      // Uniform pair a < b drawn by rejection from the full square.
      for (;;) {
        const auto a = static_cast<std::uint32_t>(rng.below(n));
        const auto b = static_cast<std::uint32_t>(rng.below(n));
        if (a < b) return {MoveKind::exchange, a, b};
      }
    }
  }
  throw ContractViolation("unknown move kind");
}

}  // namespace neutralscape
