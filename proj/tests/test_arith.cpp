#include <gtest/gtest.h>

#include <random>

#include "mlat/matrix.hpp"

using namespace mlat;

TEST(Checked, OverflowThrows) {
  const Int big = std::numeric_limits<Int>::max();
  EXPECT_THROW(checked::add(big, 1), OverflowError);
  EXPECT_THROW(checked::mul(big / 2 + 1, 2), OverflowError);
  EXPECT_THROW(checked::neg(std::numeric_limits<Int>::min()), OverflowError);
  EXPECT_EQ(checked::add(big - 1, 1), big);
}

TEST(Checked, FloorDivAndMod) {
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(floor_div(7, -2), -4);
  EXPECT_EQ(mod(-7, 3), 2);
  EXPECT_EQ(mod(7, 3), 1);
}

TEST(Checked, ExtendedGcd) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Int> d(-1000, 1000);
  for (int i = 0; i < 200; ++i) {
    const Int a = d(rng), b = d(rng);
    Int s = 0, t = 0;
    const Int g = ext_gcd(a, b, s, t);
    EXPECT_EQ(g, std::gcd(a, b));
    EXPECT_EQ(s * a + t * b, g);
  }
}

TEST(RationalTest, NormalizesAndPrints) {
  Rational r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(Rational::parse("-3/2"), r);
  EXPECT_EQ(Rational::parse("5"), Rational(5));
  EXPECT_THROW(Rational(1, 0), ArgumentError);
}

TEST(RationalTest, ReduceMod) {
  EXPECT_EQ(Rational(-1, 6).reduce_mod(2), Rational(11, 6));
  EXPECT_EQ(Rational(13, 3).reduce_mod(2), Rational(1, 3));
  EXPECT_EQ(Rational(-2).reduce_mod(2), Rational(0));
}

TEST(RationalTest, FieldAxiomsOnSamples) {
  const Rational a(3, 7), b(-5, 4), c(2, 9);
  EXPECT_EQ((a + b) * c, a * c + b * c);
  EXPECT_EQ(a / a, Rational(1));
  EXPECT_EQ(a - a, Rational(0));
}

TEST(MatrixTest, ProductsAndTranspose) {
  const IntMatrix a{{1, 2}, {3, 4}};
  const IntMatrix b{{0, 1}, {1, 0}};
  EXPECT_EQ(a * b, (IntMatrix{{2, 1}, {4, 3}}));
  EXPECT_EQ(a.transpose(), (IntMatrix{{1, 3}, {2, 4}}));
  EXPECT_EQ(determinant(a), -2);
  EXPECT_THROW(a * IntMatrix(3, 3), ArgumentError);
}

TEST(MatrixTest, UnimodularInverse) {
  const IntMatrix a{{2, 1, 0}, {1, 1, 0}, {3, 5, 1}};
  const IntMatrix inv = inverse_unimodular(a);
  EXPECT_EQ(a * inv, IntMatrix::identity(3));
  EXPECT_THROW(inverse_unimodular(IntMatrix{{2, 0}, {0, 1}}), ArgumentError);
}

TEST(SmithForm, FrozenInvariants) {
  // values from an independent computer algebra system
  struct Case {
    IntMatrix m;
    std::vector<Int> invariants;
  };
  const std::vector<Case> cases{
      {IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}, {2, 6, 12}},
      {IntMatrix{{2, 1}, {1, 2}}, {1, 3}},
      {IntMatrix{{-4, 59}, {59, -4}}, {1, 3465}},
      {IntMatrix{{0, 1, -1, -4}, {1, 0, -1, 23}, {-1, -1, -2, 10}, {-4, 23, 10, 472}}, {1, 1, 1, 3465}},
      {IntMatrix{{4, 2, 0, 0}, {2, 4, 0, 0}, {0, 0, 6, 3}, {0, 0, 3, 12}}, {1, 3, 6, 42}},
  };
  for (const auto& c : cases) {
    const SmithForm s = smith_normal_form(c.m);
    std::vector<Int> inv;
    for (std::size_t i = 0; i < s.rank; ++i) inv.push_back(s.invariant(i));
    EXPECT_EQ(inv, c.invariants) << c.m.str();
    EXPECT_EQ(s.left * c.m * s.right, s.diag);
  }
}

TEST(SmithForm, DivisibilityChainOnRandomMatrices) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Int> d(-9, 9);
  for (int n = 0; n < 100; ++n) {
    IntMatrix m(3, 4);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = d(rng);
    const SmithForm s = smith_normal_form(m);
    EXPECT_EQ(s.left * m * s.right, s.diag);
    for (std::size_t i = 0; i + 1 < s.rank; ++i) EXPECT_EQ(s.invariant(i + 1) % s.invariant(i), 0);
    EXPECT_EQ(std::abs(determinant(s.left)), 1);
    EXPECT_EQ(std::abs(determinant(s.right)), 1);
  }
}

TEST(HermiteForm, EchelonAndSameRowLattice) {
  const IntMatrix m{{2, 4, 6}, {1, 3, 5}, {3, 7, 11}};
  const IntMatrix h = hermite_normal_form(m);
  ASSERT_EQ(h.rows(), 2u);
  EXPECT_EQ(h, (IntMatrix{{1, 1, 1}, {0, 2, 4}}));
  // each row of m is an integer combination of the rows of h
  for (std::size_t i = 0; i < m.rows(); ++i) EXPECT_TRUE(solve_integer(h.transpose(), m.row(i)).has_value());
}

TEST(Kernel, PrimitiveAndAnnihilated) {
  const IntMatrix a{{2, 4, 6, 8}, {1, 0, 1, 0}};
  const IntMatrix k = integer_kernel(a);
  ASSERT_EQ(k.cols(), 2u);
  EXPECT_EQ(a * k, IntMatrix(2, 2));
  // primitive: the 2x2 minors have gcd 1
  Int g = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) g = std::gcd(g, k(i, 0) * k(j, 1) - k(j, 0) * k(i, 1));
  EXPECT_EQ(g, 1);
}

TEST(Solve, IntegerSolutionsOrNone) {
  const IntMatrix a{{2, 0}, {0, 3}};
  EXPECT_EQ(*solve_integer(a, {4, 9}), (IntVector{2, 3}));
  EXPECT_FALSE(solve_integer(a, {1, 0}).has_value());
}

TEST(Content, GcdOfEntries) {
  EXPECT_EQ(content({4, -6, 10}), 2);
  EXPECT_EQ(content({0, 0}), 0);
}
