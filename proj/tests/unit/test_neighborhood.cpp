#include <gtest/gtest.h>

#include <map>
#include <set>

#include "neutralscape/error.hpp"
#include "neutralscape/neighborhood.hpp"
#include "neutralscape/rng.hpp"
#include "oracles.hpp"

using namespace neutralscape;

namespace {

oracle::Seq seq_of(const Permutation& p) { return {p.jobs().begin(), p.jobs().end()}; }

std::set<oracle::Seq> library_neighbors(const Permutation& p) {
  std::set<oracle::Seq> out;
  for (const Move& mv : enumerate_insertion_moves(p.size())) out.insert(seq_of(apply_move(p, mv)));
  return out;
}

}  // namespace

TEST(ApplyMove, InsertionForwardAndBackward) {
  const Permutation p({0, 1, 2, 3});
  EXPECT_EQ(apply_move(p, {MoveKind::insertion, 0, 2}), Permutation({1, 2, 0, 3}));
  EXPECT_EQ(apply_move(p, {MoveKind::insertion, 3, 1}), Permutation({0, 3, 1, 2}));
  EXPECT_EQ(apply_move(p, {MoveKind::transpose, 1, 2}), Permutation({0, 2, 1, 3}));
  EXPECT_EQ(apply_move(p, {MoveKind::exchange, 0, 3}), Permutation({3, 1, 2, 0}));
}

TEST(ApplyMove, InvalidMovesThrow) {
  const Permutation p({0, 1, 2});
  EXPECT_THROW(apply_move(p, {MoveKind::insertion, 1, 1}), ContractViolation);
  EXPECT_THROW(apply_move(p, {MoveKind::insertion, 0, 3}), ContractViolation);
  EXPECT_THROW(apply_move(p, {MoveKind::transpose, 0, 2}), ContractViolation);
  EXPECT_THROW(apply_move(p, {MoveKind::exchange, 2, 1}), ContractViolation);
}

TEST(Enumerate, Cardinality) {
  EXPECT_TRUE(enumerate_insertion_moves(0).empty());
  EXPECT_TRUE(enumerate_insertion_moves(1).empty());
  EXPECT_EQ(enumerate_insertion_moves(2).size(), 1u);
  EXPECT_EQ(enumerate_insertion_moves(4).size(), 9u);
  EXPECT_EQ(enumerate_insertion_moves(20).size(), 361u);
  for (std::size_t n = 0; n < 30; ++n) {
    EXPECT_EQ(enumerate_insertion_moves(n).size(), insertion_neighborhood_size(n));
  }
}

TEST(Enumerate, TwoJobsSingleSwap) {
  const Permutation p({0, 1});
  EXPECT_EQ(library_neighbors(p), (std::set<oracle::Seq>{{1, 0}}));
}

TEST(Enumerate, DistinctAndEqualToOracleSet) {
  Rng rng(5);
  for (std::size_t n = 2; n <= 8; ++n) {
    const Permutation p = Permutation::random(n, rng);
    const auto moves = enumerate_insertion_moves(n);
    const auto lib = library_neighbors(p);
    EXPECT_EQ(lib.size(), moves.size()) << "duplicates for n=" << n;
    EXPECT_EQ(lib, oracle::insertion_neighbors(seq_of(p))) << "n=" << n;
    EXPECT_EQ(lib.count(seq_of(p)), 0u);
  }
}

TEST(Enumerate, SymmetricAndContainsTranspositions) {
  Rng rng(9);
  for (std::size_t n = 2; n <= 6; ++n) {
    const Permutation p = Permutation::random(n, rng);
    const auto lib = library_neighbors(p);
    for (const auto& t : oracle::transpose_neighbors(seq_of(p))) EXPECT_EQ(lib.count(t), 1u);
    for (const auto& q : lib) {
      const Permutation qp(std::vector<JobIndex>(q.begin(), q.end()));
      EXPECT_EQ(library_neighbors(qp).count(seq_of(p)), 1u);
    }
  }
}

TEST(Inverse, RestoresPermutation) {
  Rng rng(3);
  for (std::size_t n = 2; n <= 9; ++n) {
    const Permutation p = Permutation::random(n, rng);
    for (MoveKind kind : {MoveKind::insertion, MoveKind::transpose, MoveKind::exchange}) {
      for (int i = 0; i < 20; ++i) {
        const Move mv = random_move(kind, n, rng);
        EXPECT_EQ(apply_move(apply_move(p, mv), inverse(mv)), p);
      }
    }
  }
}

TEST(RandomMove, ExchangeUniformOnThree) {
  Rng rng(123);
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> counts;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const Move mv = random_move(MoveKind::exchange, 3, rng);
    ASSERT_TRUE(is_valid(mv, 3));
    ++counts[{mv.a, mv.b}];
  }
  ASSERT_EQ(counts.size(), 3u);
  for (const auto& [pair, c] : counts) EXPECT_NEAR(c, draws / 3.0, draws / 3.0 * 0.05);
}

TEST(RandomMove, TransposeOnTwoIsForced) {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(random_move(MoveKind::transpose, 2, rng), (Move{MoveKind::transpose, 0, 1}));
}

TEST(RandomMove, InsertionCoversCanonicalSet) {
  Rng rng(77);
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (int i = 0; i < 20000; ++i) {
    const Move mv = random_move(MoveKind::insertion, 5, rng);
    ASSERT_TRUE(is_canonical_insertion(mv.a, mv.b));
    seen.insert({mv.a, mv.b});
  }
  EXPECT_EQ(seen.size(), 16u);
}

TEST(RandomMove, InsertionOnTwentyStaysInNeighborhood) {
  Rng rng(20);
  const auto moves = enumerate_insertion_moves(20);
  const std::set<std::pair<std::uint32_t, std::uint32_t>> all = [&] {
    std::set<std::pair<std::uint32_t, std::uint32_t>> out;
    for (const auto& mv : moves) out.insert({mv.a, mv.b});
    return out;
  }();
  for (int i = 0; i < 10000; ++i) {
    const Move mv = random_move(MoveKind::insertion, 20, rng);
    EXPECT_EQ(all.count({mv.a, mv.b}), 1u);
  }
}

TEST(RandomMove, DeterministicForSeed) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(random_move(MoveKind::insertion, 20, a), random_move(MoveKind::insertion, 20, b));
  }
}
