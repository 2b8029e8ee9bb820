#include <gtest/gtest.h>

#include <random>

#include "mlat/monodromy.hpp"

using namespace mlat;

namespace {

IntMatrix reflection_h2(const IntVector& b) {
  const IntegerLattice h2 = hyperbolic_sum(3);
  return reflection(b, h2).matrix();
}

}  // namespace

class Words : public ::testing::Test {
 protected:
  MukaiModel model{2};
  MkTriple triple = MkTriple::standard(2, 3);
};

TEST_F(Words, EmptyWordIsIdentity) {
  const WordImage img = eval_phi_tilde({triple, {}}, model);
  EXPECT_EQ(img.composite, Isometry::identity(model.lattice()));
  EXPECT_TRUE(img.fixes_v);
}

TEST_F(Words, TokenAndInverseCancel) {
  const GroupoidWord w{triple, {Token::of(TokenKind::Poincare), Token::of(TokenKind::Poincare).inverted()}};
  EXPECT_EQ(eval_phi_tilde(w, model).composite, Isometry::identity(model.lattice()));
  const GroupoidWord w2{triple, {Token::tensor({1, 2, 0, 0, 0, 0}), Token::tensor({1, 2, 0, 0, 0, 0}).inverted()}};
  EXPECT_EQ(eval_phi_tilde(w2, model).composite, Isometry::identity(model.lattice()));
}

TEST_F(Words, CongruenceTokensAreIdentity) {
  const GroupoidWord w{triple, {Token::of(TokenKind::CongruenceId)}};
  EXPECT_EQ(eval_phi_tilde(w, model).composite, Isometry::identity(model.lattice()));
}

TEST_F(Words, CompositionIsInPathOrder) {
  const Token t = Token::tensor({1, 0, 0, 0, 0, 0});
  const Token p = Token::of(TokenKind::Poincare);
  const Isometry g = eval_phi_tilde({triple, {t, p}}, model).composite;
  EXPECT_EQ(g, token_isometry(p, model) * token_isometry(t, model));
}

TEST_F(Words, DualityWordGivesTheDualAction) {
  const GroupoidWord w = propdual_word(triple, 1, model);
  const Isometry g = eval_phi_tilde(w, model).composite;
  EXPECT_EQ(g, fm_action(FmKind::Dual, model));
}

TEST_F(Words, SurfaceLiftMustBeInSOPlus) {
  const IntMatrix r = reflection_h2({1, -1, 0, 0, 0, 0});  // det -1
  EXPECT_THROW(eval_phi_tilde({triple, {Token::surface_lift(r)}}, model), PreconditionError);
  const IntMatrix rr = r * reflection_h2({0, 0, 1, -1, 0, 0});
  EXPECT_NO_THROW(eval_phi_tilde({triple, {Token::surface_lift(rr)}}, model));
}

TEST_F(Words, CertifyRejectsWordsMovingV) {
  const GroupoidWord w{triple, {Token::of(TokenKind::Poincare)}};
  EXPECT_FALSE(eval_phi_tilde(w, model).fixes_v);
  EXPECT_THROW(certify(w, model), PreconditionError);
}

TEST_F(Words, RestrictionOfSurfaceLift) {
  const IntMatrix h = reflection_h2({1, -1, 0, 0, 0, 0}) * reflection_h2({0, 0, 1, -1, 0, 0});
  const MonodromyCertificate c = surface_lift_in_N(h, triple, model);
  // on the canonical basis of v⊥ the restriction is h ⊕ 1
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(c.restricted.matrix()(i, j), h(i, j));
  EXPECT_EQ(c.restricted.matrix()(6, 6), 1);
  EXPECT_TRUE(c.in_N);
  EXPECT_EQ(c.det, 1);
  EXPECT_EQ(c.disc, 1);
}

TEST_F(Words, IdentityCertificate) {
  const MonodromyCertificate c = surface_lift_in_N(IntMatrix::identity(6), triple, model);
  EXPECT_EQ(c.restricted.matrix(), IntMatrix::identity(7));
  EXPECT_TRUE(c.in_N);
  EXPECT_EQ(c.ori, 0);
}

TEST(Involution, ReflectionPairIsMinusDuality) {
  const MukaiModel model;
  const Isometry rr = involution_rs_rs1(model);
  EXPECT_EQ(rr.matrix(), -fm_action(FmKind::Dual, model).matrix());
  for (Int m : {2, 3})
    for (Int k : {3, 4, 5}) {
      const IntVector v = mukai_coords(m, IntVector(6, 0), -m * k);
      const IntVector s = mukai_coords(1, IntVector(6, 0), 1), s1 = mukai_coords(1, IntVector(6, 0), -1);
      const Isometry r1s = reflection(s1, model.lattice()) * reflection(s, model.lattice());
      EXPECT_EQ(r1s(v), scale(Int{-1}, v));
    }
}

TEST(DualityCertificate, RestrictsToTheReflectionPair) {
  const MukaiModel model;
  for (auto [m, k] : std::vector<std::pair<Int, Int>>{{2, 3}, {2, 5}, {3, 4}})
    for (Int p : {1, 2, 3}) {
      const MkTriple tr = MkTriple::standard(m, k);
      const MonodromyCertificate c = propdual_certificate(tr, p, model);
      const IntegerLattice vp = v_perp(tr.v(), model.lattice_ptr());
      EXPECT_EQ(c.restricted.matrix(), restricted_matrix(involution_rs_rs1(model), vp, vp));
      EXPECT_EQ(c.ori, 1);
      EXPECT_EQ(c.det, -1);
      EXPECT_EQ(c.disc, -1);  // det·disc = 1
      EXPECT_TRUE(c.in_W);
      EXPECT_TRUE(c.in_N);
    }
}

TEST(DualityCertificate, IndependentOfTheMultiple) {
  const MukaiModel model;
  const MkTriple tr = MkTriple::standard(2, 3);
  const IntMatrix first = propdual_certificate(tr, 1, model).restricted.matrix();
  for (Int p : {2, 3}) EXPECT_EQ(propdual_certificate(tr, p, model).restricted.matrix(), first);
  EXPECT_THROW(propdual_word(tr, 0, model), ArgumentError);
}

TEST(PsiRestrict, IsFunctorialOnVFixingIsometries) {
  const MukaiModel model;
  const MkTriple tr = MkTriple::standard(2, 3);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<Int> d(-3, 3);
  const auto random_lift = [&]() {
    // product of two reflections in (-2)-vectors of U2⊕U3 and U1: det 1, ori 0
    const Int x = d(rng), y = d(rng);
    const IntVector b1{1, -1, 0, 0, 0, 0};
    const IntVector b2{0, 0, x, y, 1, -1 - x * y};
    return extend_surface(reflection_h2(b1) * reflection_h2(b2), model);
  };
  const Isometry dual = eval_phi_tilde(propdual_word(tr, 1, model), model).composite;
  for (int i = 0; i < 20; ++i) {
    const Isometry g = i % 2 ? random_lift() : random_lift() * dual;
    const Isometry h = random_lift() * dual;
    EXPECT_EQ(psi_restrict(g * h, tr, model), psi_restrict(g, tr, model) * psi_restrict(h, tr, model));
  }
}

TEST(Similitude, ScalesTheForm) {
  const MukaiModel model;
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<Int> d(-9, 9);
  const IntegerLattice vp = v_perp(MkTriple::standard(3, 4).v(), model.lattice_ptr());
  for (int i = 0; i < 50; ++i) {
    IntVector x(7), y(7);
    for (auto& c : x) c = d(rng);
    for (auto& c : y) c = d(rng);
    EXPECT_EQ(vp.inner(istar(x, 3), istar(y, 3)), 9 * vp.inner(x, y));
  }
}

TEST(Similitude, SharpKeepsCharacters) {
  const MukaiModel model;
  const MkTriple tr = MkTriple::standard(3, 4);
  const IntegerLattice vp = v_perp(tr.v(), model.lattice_ptr());
  const IntegerLattice wp = v_perp(tr.w.coords(), model.lattice_ptr());
  EXPECT_EQ(isharp(Isometry::identity(vp), wp), Isometry::identity(wp));
  const Isometry g = rho({1, 1, 0, 0, 0, 0, 0}, vp);
  const Isometry h = isharp(g, wp);
  EXPECT_EQ(det_char(h), det_char(g));
  EXPECT_EQ(disc_sign(h), disc_sign(g));
  EXPECT_EQ(ori_char(h, canonical_orientation_u3(wp)), ori_char(g, canonical_orientation_u3(vp)));
}
