#include <gtest/gtest.h>

#include <random>

#include "mlat/discriminant.hpp"

using namespace mlat;

namespace {

// Test-side q-values of all classes of L∨/L, enumerated as G⁻¹z for z in a box.
std::set<Rational> brute_qvalues(const IntMatrix& g, Int box) {
  const RatMatrix gi = inverse(to_rational(g));
  std::set<Rational> out;
  const std::size_t n = g.rows();
  IntVector z(n, 0);
  while (true) {
    const RatVector y = gi * to_rational(z);
    out.insert(dot(y, to_rational(g) * y).reduce_mod(2));
    std::size_t i = 0;
    while (i < n && ++z[i] == box) z[i++] = 0;
    if (i == n) break;
  }
  return out;
}

}  // namespace

TEST(DiscGroup, FrozenInvariants) {
  EXPECT_TRUE(disc_group(hyperbolic_U()).trivial());
  EXPECT_EQ(disc_group(minus_2k(3)).invariants(), std::vector<Int>{6});
  EXPECT_EQ(disc_group(u3_minus_2k(4)).invariants(), std::vector<Int>{8});
  EXPECT_EQ(disc_group(IntegerLattice(IntMatrix{{2, 0}, {0, 4}})).invariants(), (std::vector<Int>{2, 4}));
  EXPECT_EQ(disc_group(IntegerLattice(IntMatrix{{4, 2, 0, 0}, {2, 4, 0, 0}, {0, 0, 6, 3}, {0, 0, 3, 12}})).invariants(),
            (std::vector<Int>{3, 6, 42}));
}

TEST(DiscGroup, QValuesMatchBruteForce) {
  const std::vector<IntMatrix> grams{IntMatrix{{2, 1}, {1, 2}}, IntMatrix{{-6}}, IntMatrix{{2, 0}, {0, 4}},
                                     IntMatrix{{-2, 1, 0}, {1, -2, 1}, {0, 1, -4}}, IntMatrix{{4, 1}, {1, -6}}};
  for (const auto& g : grams) {
    const DiscriminantData a = disc_group(IntegerLattice(g));
    std::set<Rational> mine;
    for (const auto& c : a.elements()) mine.insert(a.qbar(c));
    EXPECT_EQ(mine, brute_qvalues(g, std::abs(determinant(g)))) << g.str();
    EXPECT_EQ(a.order(), std::abs(determinant(g)));
  }
}

TEST(DiscGroup, FrozenQValues) {
  EXPECT_EQ(disc_group(minus_2k(3)).qbar_generators(), std::vector<Rational>{Rational(11, 6)});
  EXPECT_EQ(disc_group(IntegerLattice(IntMatrix{{2, 1}, {1, 2}})).qbar_generators(), std::vector<Rational>{Rational(2, 3)});
}

TEST(DiscGroup, CoordinatesRoundTrip) {
  const DiscriminantData a = disc_group(IntegerLattice(IntMatrix{{4, 2, 0, 0}, {2, 4, 0, 0}, {0, 0, 6, 3}, {0, 0, 3, 12}}));
  for (const auto& c : a.elements()) EXPECT_EQ(a.coords_of(a.lift_of(c)), c);
  EXPECT_THROW(a.coords_of(RatVector{Rational(1, 5), 0, 0, 0}), ArgumentError);
}

TEST(DiscGroup, OrthogonalGroupOfCyclicFormMatchesCount) {
  // independent count: units a mod 2k with a²·(-1/2k) ≡ -1/2k mod 2
  for (Int k = 3; k <= 30; ++k) {
    Int count = 0;
    for (Int a = 1; a < 2 * k; ++a)
      if (std::gcd(a, 2 * k) == 1 && (a * a - 1) % (4 * k) == 0) ++count;
    EXPECT_EQ(static_cast<Int>(enum_disc_autos(k).size()), count) << k;
    EXPECT_EQ(static_cast<Int>(orthogonal_group(disc_group(u3_minus_2k(k))).size()), count) << k;
  }
}

TEST(DiscHomTest, CompositionAndScalars) {
  const std::vector<Int> inv{6};
  const DiscHom five = DiscHom::scalar(inv, 5);
  EXPECT_TRUE((five * five).is_identity());
  EXPECT_TRUE(five.is_scalar(-1));
  EXPECT_EQ(five(IntVector{1}), IntVector{5});
}

TEST(DiscMap, ReflectionInMinusTwoVectorActsTrivially) {
  const IntegerLattice l = u3_minus_2k(3);
  const IntVector u{1, -1, 0, 0, 0, 0, 0};
  const IntVector gu = l.gram() * u;
  IntMatrix m = IntMatrix::identity(7);
  for (std::size_t j = 0; j < 7; ++j)
    for (std::size_t i = 0; i < 7; ++i) m(i, j) += gu[j] * u[i];  // x + (x·u)u for u² = -2
  EXPECT_TRUE(disc_map(Isometry(l, l, m)).is_identity());
  EXPECT_TRUE(disc_map(Isometry::negation(l)).is_scalar(-1));
}

class Gluing : public ::testing::Test {
 protected:
  LatticePtr l = share(hyperbolic_sum(3));
};

TEST_F(Gluing, AntiIsometryOnRandomSublattices) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Int> d(-10, 10);
  int tested = 0;
  while (tested < 40) {
    std::vector<IntVector> gens(1 + tested % 2, IntVector(6));
    for (auto& g : gens)
      for (auto& x : g) x = d(rng);
    if (gens.size() == 2 && rank(IntMatrix::from_columns(gens)) < 2) continue;
    IntegerLattice s(IntMatrix{{2}});
    try {
      s = saturate(gens, l);
    } catch (const ArgumentError&) {
      continue;  // degenerate span
    }
    if (s.determinant() == 0) continue;
    const IntegerLattice k = orth_complement(s);
    const GlueData g = glue(s, k);
    for (const auto& c : g.disc_s.elements()) {
      const IntVector gc = g.gamma(c);
      EXPECT_EQ((g.disc_s.qbar(c) + g.disc_k.qbar(gc)).reduce_mod(2), Rational(0));
      EXPECT_EQ(g.gamma_inv(gc), c);
    }
    ++tested;
  }
}

TEST_F(Gluing, ExtendByIdentityIsIdentity) {
  const IntegerLattice s = saturate({{1, 2, 0, 0, 0, 0}, {0, 0, 1, 3, 0, 0}}, l);
  const IntegerLattice k = orth_complement(s);
  const GlueData g = glue(s, k);
  const Isometry ext = extend_isometry(Isometry::identity(s), Isometry::identity(k), g, g);
  EXPECT_EQ(ext.matrix(), IntMatrix::identity(6));
  // -id on both parts extends to -id
  const Isometry neg = extend_isometry(Isometry::negation(s), Isometry::negation(k), g, g);
  EXPECT_EQ(neg.matrix(), -IntMatrix::identity(6));
}

TEST_F(Gluing, ExtensionRestrictsToTheGivenParts) {
  const IntegerLattice s = saturate({{1, 2, 0, 0, 0, 0}}, l);
  const IntegerLattice k = orth_complement(s);
  const GlueData g = glue(s, k);
  // -id on K with id on S does not extend (A_S = Z/4 and -1 ≠ 1 there)
  EXPECT_THROW(extend_isometry(Isometry::identity(s), Isometry::negation(k), g, g), ExtensionObstructed);
  const Isometry neg = extend_isometry(Isometry::negation(s), Isometry::negation(k), g, g);
  EXPECT_EQ(neg(IntVector{1, 2, 0, 0, 0, 0}), (IntVector{-1, -2, 0, 0, 0, 0}));
}

TEST_F(Gluing, RejectsNonPrimitiveOrWrongComplement) {
  const IntegerLattice span = IntegerLattice::sublattice(l, IntMatrix::from_columns({{2, 2, 0, 0, 0, 0}}));
  const IntegerLattice k = orth_complement(span);
  EXPECT_THROW(glue(span, k), PreconditionError);
}
