#include <gtest/gtest.h>

#include <random>

#include "magicbcs/gf2.hpp"
#include "oracles.hpp"

using namespace magicbcs::gf2;

TEST(BitVector, SetFlipCount) {
  BitVector v(130);
  v.set(0);
  v.set(64);
  v.set(129);
  EXPECT_EQ(v.count(), 3u);
  v.flip(64);
  EXPECT_FALSE(v.get(64));
  EXPECT_EQ(v.ones(), (std::vector<std::size_t>{0, 129}));
  EXPECT_EQ(BitVector::from_string("0110").to_string(), "0110");
}

TEST(BitVector, XorAndDot) {
  auto a = BitVector::from_string("1100");
  auto b = BitVector::from_string("1010");
  EXPECT_EQ((a ^ b).to_string(), "0110");
  EXPECT_TRUE(a.dot(BitVector::from_string("1000")));
  EXPECT_FALSE(a.dot(b) ^ true);
}

TEST(Gf2Solve, SmallConsistent) {
  Gf2System s(Gf2Matrix::from_strings({"110", "011"}), BitVector::from_string("10"));
  auto r = solve(s);
  ASSERT_TRUE(std::holds_alternative<Gf2Solution>(r));
  const auto& x = std::get<Gf2Solution>(r).assignment;
  EXPECT_EQ(s.matrix.multiply(x), s.rhs);
}

TEST(Gf2Solve, InconsistentCitesRows) {
  Gf2System s(Gf2Matrix::from_strings({"110", "011", "101"}), BitVector::from_string("001"));
  auto r = solve(s);
  ASSERT_TRUE(std::holds_alternative<Gf2Inconsistency>(r));
  const auto& inc = std::get<Gf2Inconsistency>(r);
  EXPECT_EQ(inc.rows, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_TRUE(verify_inconsistency(s, inc));
  Gf2Inconsistency partial{{0, 1}};
  EXPECT_FALSE(verify_inconsistency(s, partial));
}

TEST(Gf2Solve, EmptySystem) {
  Gf2System s(Gf2Matrix(0, 3), BitVector(0));
  auto r = solve(s);
  ASSERT_TRUE(std::holds_alternative<Gf2Solution>(r));
  EXPECT_EQ(std::get<Gf2Solution>(r).free_cols.size(), 3u);
}

TEST(Gf2Solve, RhsLengthMismatchThrows) {
  EXPECT_THROW(Gf2System(Gf2Matrix(2, 2), BitVector(3)), std::invalid_argument);
}

TEST(Gf2Reduce, LowestColumnPivots) {
  Gf2System s(Gf2Matrix::from_strings({"0110", "0011"}), BitVector(2));
  auto red = row_reduce(s);
  EXPECT_EQ(red.pivot_cols, (std::vector<std::size_t>{1, 2}));
  EXPECT_TRUE(red.consistent());
}

// Every random system up to 10 x 10 agrees with exhaustive search, and both
// outcomes come with a checkable witness.
TEST(Gf2Solve, RandomAgainstBruteForce) {
  std::mt19937_64 gen(20261016);
  for (int trial = 0; trial < 1500; ++trial) {
    const std::size_t rows = 1 + gen() % 10, cols = 1 + gen() % 10;
    std::vector<std::vector<int>> m(rows, std::vector<int>(cols));
    std::vector<int> rhs(rows);
    Gf2Matrix M(rows, cols);
    BitVector b(rows);
    const unsigned density = 1 + gen() % 3;
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        m[r][c] = (gen() % 4) < density;
        M.set(r, c, m[r][c]);
      }
      rhs[r] = gen() & 1;
      b.set(r, rhs[r]);
    }
    Gf2System s(M, b);
    const auto want = oracle::brute_force_gf2(m, rhs, cols);
    const auto got = solve(s);
    ASSERT_EQ(want.has_value(), std::holds_alternative<Gf2Solution>(got)) << "trial " << trial;
    if (want) {
      EXPECT_EQ(M.multiply(std::get<Gf2Solution>(got).assignment), b);
    } else {
      EXPECT_TRUE(verify_inconsistency(s, std::get<Gf2Inconsistency>(got)));
    }
  }
}
