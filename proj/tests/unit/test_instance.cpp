#include <gtest/gtest.h>

#include <array>

#include "neutralscape/error.hpp"
#include "neutralscape/instance.hpp"

using namespace neutralscape;

TEST(Instance, RejectsBadDimensions) {
  EXPECT_THROW(Instance(0, 1, {}), ContractViolation);
  EXPECT_THROW(Instance(2, 2, {1, 2, 3}), ContractViolation);
  EXPECT_THROW(Instance(1, 1, {-1}), ContractViolation);
}

TEST(Generate, SingleCellInRange) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Instance inst = generate_instance(1, 1, s);
    EXPECT_GE(inst.time(0, 0), 0);
    EXPECT_LE(inst.time(0, 0), 99);
  }
}

TEST(Generate, TwentyByFiveInRange) {
  const Instance inst = generate_instance(20, 5, 12345);
  EXPECT_EQ(inst.n_jobs(), 20u);
  EXPECT_EQ(inst.n_machines(), 5u);
  for (auto p : inst.row_major()) {
    EXPECT_GE(p, 0);
    EXPECT_LE(p, 99);
  }
  EXPECT_EQ(inst.seed(), 12345u);
}

TEST(Generate, Deterministic) {
  EXPECT_EQ(generate_instance(5, 3, 42), generate_instance(5, 3, 42));
  EXPECT_FALSE(generate_instance(5, 3, 42) == generate_instance(5, 3, 43));
}

TEST(Generate, HistogramCoarselyUniform) {
  const Instance inst = generate_instance(200, 20, 2024);
  std::array<int, 100> counts{};
  for (auto p : inst.row_major()) ++counts[p];
  // 4000 draws, 40 expected per bucket, +-50%.
  for (int v = 0; v < 100; ++v) {
    EXPECT_GE(counts[v], 20) << "value " << v;
    EXPECT_LE(counts[v], 60) << "value " << v;
  }
}

TEST(Generate, TaillardSeedReproducesTa001) {
  // First benchmark instance of the 20x5 class, time seed 873654221.
  const Instance ta001 = generate_taillard_instance(20, 5, 873654221);
  const std::array<int, 20> machine1{54, 83, 15, 71, 77, 36, 53, 38, 27, 87,
                                     76, 91, 14, 29, 12, 77, 32, 87, 68, 94};
  const std::array<int, 20> machine5{58, 56, 20, 85, 53, 35, 53, 41, 69, 13,
                                     86, 72, 8,  49, 47, 87, 58, 18, 68, 28};
  for (std::size_t j = 0; j < 20; ++j) {
    EXPECT_EQ(ta001.time(j, 0), machine1[j]);
    EXPECT_EQ(ta001.time(j, 4), machine5[j]);
  }
  EXPECT_THROW(generate_taillard_instance(2, 2, 0), ContractViolation);
}

TEST(Parse, TwoByTwo) {
  const Instance inst = parse_instance("2 2\n2 3\n4 1\n");
  EXPECT_EQ(inst, Instance(2, 2, {2, 3, 4, 1}));
  EXPECT_EQ(inst.time(1, 0), 4);
}

TEST(Parse, OneByOne) { EXPECT_EQ(parse_instance("1 1\n7\n"), Instance(1, 1, {7})); }

TEST(Parse, MissingRowNamesLine) {
  try {
    parse_instance("2 2\n2 3\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("expected 2 rows"), std::string::npos) << e.what();
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Parse, MalformedInputs) {
  auto line_of = [](const char* text) -> std::size_t {
    try {
      parse_instance(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("2\n1 2\n"), 1u);             // header
  EXPECT_EQ(line_of("2 2\n1 2\n3 x\n"), 3u);      // token
  EXPECT_EQ(line_of("2 2\n1 2\n3\n"), 3u);        // column count
  EXPECT_EQ(line_of("1 2\n1 2\n3 4\n"), 3u);      // extra row
  EXPECT_EQ(line_of("1 2\n1 -2\n"), 2u);          // negative
  EXPECT_EQ(line_of("0 2\n"), 1u);                // zero jobs
  EXPECT_EQ(line_of(""), 1u);
}

TEST(Parse, ToleratesCrLfAndBlankLines) {
  EXPECT_EQ(parse_instance("2 1\r\n\r\n5\r\n6\r\n\n"), Instance(2, 1, {5, 6}));
}

TEST(Parse, TaillardLayoutIsTransposed) {
  const char* text =
      "number of jobs, number of machines, initial seed, upper bound and lower bound :\n"
      "   3  2  12345  20  18\n"
      "processing times :\n"
      " 1 2 3\n"
      " 4 5 6\n";
  const Instance inst = parse_instance(text, InstanceFormat::taillard);
  EXPECT_EQ(inst, Instance(3, 2, {1, 4, 2, 5, 3, 6}));
  EXPECT_EQ(inst.seed(), 12345u);
  EXPECT_EQ(parse_instance("3 2\n1 2 3\n4 5 6\n", InstanceFormat::taillard), inst);
  EXPECT_THROW(parse_instance("3 2\n1 2 3\n", InstanceFormat::taillard), ParseError);
}

TEST(Write, OneByOne) { EXPECT_EQ(write_instance(Instance(1, 1, {7})), "1 1\n7\n"); }

TEST(Write, RoundTripGenerated) {
  for (auto [n, m] : {std::pair{20, 5}, std::pair{50, 20}, std::pair{3, 7}}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Instance inst = generate_instance(n, m, seed);
      EXPECT_EQ(parse_instance(write_instance(inst)), inst);
    }
  }
}
