#include <gtest/gtest.h>

#include <random>

#include "mlat/companion.hpp"
#include "mlat/weyl.hpp"

using namespace mlat;

namespace {

IntVector random_root(std::mt19937_64& rng, Int k, Int sq) {
  // u = (x, y, 0, 0, 0, 0, c) with x·y = (sq + 2k c²)/2, i.e. u² = sq
  std::uniform_int_distribution<Int> d(-5, 5);
  while (true) {
    const Int c = d(rng);
    const Int half = sq / 2 + k * c * c;
    for (Int x = 1; x <= std::abs(half) && x <= 20; ++x)
      if (half % x == 0) return {x, half / x, 0, 0, 1, 0, c};
    if (half == 0) return {1, 0, 0, 0, 0, 0, 0};
  }
}

}  // namespace

TEST(IsometryTest, RejectsNonIsometries) {
  const IntegerLattice u = hyperbolic_U();
  EXPECT_THROW(Isometry(u, u, IntMatrix{{1, 1}, {0, 1}}), ArgumentError);
  EXPECT_THROW(Isometry(u, minus_2k(1), IntMatrix{{1}}), ArgumentError);
  EXPECT_NO_THROW(Isometry(u, u, IntMatrix{{0, 1}, {1, 0}}));
}

TEST(IsometryTest, CompositionAndInverse) {
  const IntegerLattice l = u3_minus_2k(3);
  const Isometry r = reflection({1, -1, 0, 0, 0, 0, 0}, l);
  EXPECT_EQ(r * r, Isometry::identity(l));
  EXPECT_EQ(r.inverse(), r);
}

TEST(Characters, IdentityIsTrivial) {
  const IntegerLattice l = u3_minus_2k(3);
  const OrientationDatum eps = canonical_orientation_u3(l);
  const Isometry id = Isometry::identity(l);
  EXPECT_EQ(det_char(id), 1);
  EXPECT_EQ(ori_char(id, eps), 0);
  EXPECT_EQ(disc_sign(id), 1);
  EXPECT_TRUE(in_N(id, eps));
}

TEST(Characters, MinusIdentityReversesOrientation) {
  const IntegerLattice l = u3_minus_2k(3);
  const OrientationDatum eps = canonical_orientation_u3(l);
  const Isometry neg = Isometry::negation(l);
  EXPECT_EQ(ori_char(neg, eps), 1);  // three positive directions
  EXPECT_EQ(det_char(neg), -1);
  EXPECT_FALSE(in_W(neg, eps));
}

TEST(Characters, SignedReflectionsOnRandomRoots) {
  std::mt19937_64 rng(5);
  for (Int k = 3; k <= 10; ++k) {
    const IntegerLattice l = u3_minus_2k(k);
    const OrientationDatum eps = canonical_orientation_u3(l);
    for (Int sq : {2, -2}) {
      for (int i = 0; i < 5; ++i) {
        const IntVector u = random_root(rng, k, sq);
        ASSERT_EQ(l.square(u), sq);
        const Isometry r = rho(u, l);
        EXPECT_EQ(ori_char(r, eps), 0);
        EXPECT_EQ(det_char(r), sq / 2);
        EXPECT_EQ(disc_sign(r), -sq / 2);
        EXPECT_TRUE(in_W(r, eps));
        EXPECT_FALSE(in_N(r, eps));  // det·disc = -1
      }
    }
  }
}

TEST(Characters, ProductOfTwoSignedReflectionsIsInN) {
  const IntegerLattice l = u3_minus_2k(4);
  const OrientationDatum eps = canonical_orientation_u3(l);
  const Isometry g = rho({1, -1, 0, 0, 0, 0, 0}, l) * rho({0, 0, 1, 1, 0, 0, 0}, l);
  EXPECT_TRUE(in_N(g, eps));
}

TEST(Characters, OrientationIndependentOfPositiveBasis) {
  const IntegerLattice l = u3_minus_2k(3);
  const OrientationDatum a = canonical_orientation_u3(l);
  const OrientationDatum b = OrientationDatum::from_diagonalization(l);
  const Isometry g = rho({1, 1, 0, 0, 0, 0, 0}, l) * rho({0, 0, 1, 1, 0, 0, 0}, l);
  // the two bases may differ in orientation, but the character does not depend on that
  EXPECT_EQ(ori_char(g, a), ori_char(g, b));
  EXPECT_EQ(ori_char(g, a), 0);
}

TEST(Reflection, RequiresRootsAndIntegrality) {
  const IntegerLattice l = u3_minus_2k(3);
  EXPECT_THROW(reflection({1, 1, 1, 1, 0, 0, 0}, l), ArgumentError);
  EXPECT_FALSE(integral_reflection({0, 0, 0, 0, 0, 0, 0}, l).has_value());
  // the (-6)-vector spanning <-6> gives an integral reflection
  EXPECT_TRUE(integral_reflection({0, 0, 0, 0, 0, 0, 1}, l).has_value());
}

TEST(IndexFormula, PowersOfTwo) {
  EXPECT_EQ(index_monodromy(3), 2);
  EXPECT_EQ(index_monodromy(6), 4);
  EXPECT_EQ(index_monodromy(30), 8);
  EXPECT_EQ(index_monodromy(210), 16);
  EXPECT_THROW(index_monodromy(2), PreconditionError);
  EXPECT_EQ(distinct_primes(1), 0);
  EXPECT_EQ(distinct_primes(64), 1);
}

TEST(IndexFormula, BruteForceUpTo200) {
  for (Int k = 3; k <= 200; ++k) {
    Int count = 0;
    for (Int a = 0; a < 2 * k; ++a)
      if ((a * a - 1) % (4 * k) == 0) ++count;
    int primes = 0;
    for (Int p = 2, n = k; n > 1; ++p)
      if (n % p == 0) {
        ++primes;
        while (n % p == 0) n /= p;
      }
    EXPECT_EQ(count, Int{1} << primes) << k;
    EXPECT_EQ(index_monodromy(k), count);
  }
}

TEST(Search, BoxOrderIsShellThenLexicographic) {
  std::vector<IntVector> seen;
  for_each_in_box(2, 2, [&](const IntVector& v) {
    seen.push_back(v);
    return false;
  });
  ASSERT_EQ(seen.size(), 24u);
  EXPECT_EQ(seen.front(), (IntVector{-1, -1}));
  EXPECT_EQ(seen[7], (IntVector{1, 1}));
  EXPECT_EQ(seen[8], (IntVector{-2, -2}));
}

TEST(Search, VectorsOfNorm) {
  const auto v = vectors_of_norm(hyperbolic_U().gram(), 2, 3);
  for (const auto& x : v) EXPECT_EQ(2 * x[0] * x[1], 2);
  EXPECT_EQ(v.size(), 2u);  // ±(1,1)
}

TEST(Search, RankTwoIsometryWithLargeSecondColumn) {
  // needs a second column far outside the box of radius 10
  const IntMatrix from{{-4, 5}, {5, 860}};
  const IntMatrix to{{-4, 59}, {59, -4}};
  const auto p = find_isometry_bounded(from, to, 10);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->transpose() * to * *p, from);
  EXPECT_EQ(std::abs(determinant(*p)), 1);
}

TEST(Search, NoIsometryBetweenDifferentForms) {
  EXPECT_FALSE(find_isometry_bounded(IntMatrix{{2, 1}, {1, 2}}, IntMatrix{{2, 0}, {0, 2}}, 5).has_value());
  EXPECT_FALSE(find_isometry_bounded(IntMatrix{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}, IntMatrix{{2, 1, 0}, {1, 2, 0}, {0, 0, 2}}, 3)
                   .has_value());
}

TEST(Split, BlockFormSplitsAtBoundOne) {
  const IntMatrix s{{4, 1}, {1, 4}};
  const IntegerLattice k = direct_sum(hyperbolic_U(), IntegerLattice(-s));
  const HyperbolicSplit sp = canonical_split(k, s, 1);
  EXPECT_EQ(sp.model.gram(), k.gram());
  EXPECT_EQ(k.square(sp.isotropic), 0);
  EXPECT_EQ(k.inner(sp.isotropic, sp.partner), 1);
}

TEST(Split, EtaAndThetaAreTrivialOnTheDiscriminant) {
  const IntMatrix s{{4, 1}, {1, 4}};
  const IntegerLattice k = direct_sum(hyperbolic_U(), IntegerLattice(-s));
  const HyperbolicSplit sp = canonical_split(k, s, 1);
  const Isometry eta = swap_hyperbolic(sp);
  const Isometry theta = negate_hyperbolic(sp);
  EXPECT_EQ(det_char(eta), -1);
  EXPECT_EQ(det_char(theta), 1);
  EXPECT_TRUE(disc_map(eta).is_identity());
  EXPECT_TRUE(disc_map(theta).is_identity());
}

TEST(Split, BoundZeroIsNotFound) {
  const IntMatrix s{{4, 1}, {1, 4}};
  const IntegerLattice k = direct_sum(hyperbolic_U(), IntegerLattice(-s));
  try {
    canonical_split(k, s, 0, "split K1");
    FAIL() << "expected NotFound";
  } catch (const NotFound& e) {
    EXPECT_EQ(e.stage, "split K1");
    EXPECT_EQ(e.bound, 0);
  }
}

TEST(Companion, RealizesEveryElementOfTheOrthogonalGroup) {
  for (Int k : {3, 6, 15}) {
    const IntegerLattice l = u3_minus_2k(k);
    const DiscriminantData a = disc_group(l);
    for (const DiscHom& target : orthogonal_group(a)) {
      const Isometry c = realize_disc_action(l, target, 3);
      EXPECT_EQ(disc_map(c), target) << k;
    }
  }
}
