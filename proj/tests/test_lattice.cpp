#include <gtest/gtest.h>

#include "mlat/lattice.hpp"

using namespace mlat;

TEST(Lattice, RejectsOddOrAsymmetricOrDegenerateForms) {
  EXPECT_THROW(IntegerLattice(IntMatrix{{1}}), ArgumentError);
  EXPECT_THROW(IntegerLattice(IntMatrix{{2, 1}, {0, 2}}), ArgumentError);
  EXPECT_THROW(IntegerLattice(IntMatrix{{2, 2}, {2, 2}}), ArgumentError);
}

TEST(Lattice, StandardConstructors) {
  const IntegerLattice u = hyperbolic_U();
  EXPECT_EQ(u.determinant(), -1);
  EXPECT_TRUE(u.unimodular());
  EXPECT_EQ(u.signature(), (Signature{1, 1}));

  const IntegerLattice l = u3_minus_2k(4);
  EXPECT_EQ(l.rank(), 7u);
  EXPECT_EQ(l.determinant(), 8);
  EXPECT_EQ(l.signature(), (Signature{3, 4}));
  EXPECT_EQ(l.label(), "U+U+U+<-8>");
  EXPECT_THROW(minus_2k(0), ArgumentError);
}

TEST(Lattice, TwistNegatesSignature) {
  const IntegerLattice s(IntMatrix{{4, 1}, {1, 4}});
  const IntegerLattice t = twist(s, -1);
  EXPECT_EQ(t.gram(), (IntMatrix{{-4, -1}, {-1, -4}}));
  EXPECT_EQ(t.signature(), (Signature{0, 2}));
}

TEST(Lattice, SaturationOfNonPrimitiveSpan) {
  const LatticePtr l = share(hyperbolic_sum(3));
  // 2e and f + e2 - f2 span a sublattice of index 2 in its saturation
  const IntegerLattice s = saturate({{2, 0, 0, 0, 0, 0}, {0, 1, 1, -1, 0, 0}}, l);
  EXPECT_EQ(s.rank(), 2u);
  EXPECT_TRUE(is_primitive(s));
  const IntegerLattice span = IntegerLattice::sublattice(l, IntMatrix::from_columns({{2, 0, 0, 0, 0, 0}, {0, 1, 1, -1, 0, 0}}));
  EXPECT_FALSE(is_primitive(span));
  EXPECT_THROW(saturate({{1, 0, 0, 0, 0, 0}, {2, 0, 0, 0, 0, 0}}, l), ArgumentError);
}

TEST(Lattice, OrthogonalComplementPairsToZero) {
  const LatticePtr l = share(hyperbolic_sum(3));
  const IntegerLattice s = saturate({{1, 2, 0, 0, 0, 0}, {0, 0, 1, 2, 1, -1}}, l);
  const IntegerLattice k = orth_complement(s);
  EXPECT_EQ(k.rank(), 4u);
  const IntMatrix cross = s.embedding()->basis.transpose() * l->gram() * k.embedding()->basis;
  EXPECT_EQ(cross, IntMatrix(2, 4));
  // |det S| = |det K| in a unimodular lattice
  EXPECT_EQ(std::abs(s.determinant()), std::abs(k.determinant()));
  EXPECT_EQ(s.signature().positive + k.signature().positive, 3);
}

TEST(Lattice, ReducedKeepsTheSublattice) {
  const LatticePtr l = share(hyperbolic_sum(3));
  const IntMatrix b = IntMatrix::from_columns({{1, 0, 7, 3, 0, 0}, {1, 0, 8, 3, 0, 1}, {0, 1, 0, 0, 5, 0}});
  const IntegerLattice s = IntegerLattice::sublattice(l, b);
  const IntegerLattice r = reduced(s);
  EXPECT_TRUE(same_sublattice(s, r));
  Int before = 0, after = 0;
  for (std::size_t j = 0; j < 3; ++j) {
    before += dot(b.col(j), b.col(j));
    after += dot(r.embedding()->basis.col(j), r.embedding()->basis.col(j));
  }
  EXPECT_LT(after, before);
}

TEST(Lattice, DiagonalizationIsCongruent) {
  const IntegerLattice l(IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, -6}});
  const auto d = l.diagonalize();
  const RatMatrix t = d.transform;
  const RatMatrix g = t.transpose() * to_rational(l.gram()) * t;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(g(i, j), i == j ? d.diag[i] : Rational(0));
}
