#include <gtest/gtest.h>

#include "kmw/dl.hpp"
#include "test_support.hpp"

using namespace kmw;

namespace {

std::vector<Coweight> grid() {
  std::vector<Coweight> out;
  for (int x = -2; x <= 2; ++x)
    for (int y = -1; y <= 2; ++y) out.push_back(Coweight::of({x, y}));
  return out;
}

}  // namespace

TEST(DL, PlainOperatorOnOne) {
  StarContext ctx(MetaplecticDatum::plain(finite_cartan("A2"), 1));
  Localized one(ctx.monomial(ctx.datum().zero()));
  DLOperator spherical(ctx, Flavor::Spherical, false);
  DLOperator whittaker(ctx, Flavor::Whittaker, false);
  for (int i = 0; i < 2; ++i) {
    // c(X) + b(X) = v and cflat(X) + b(X) = -v X^{-1}.
    Localized r = spherical.apply(i, one);
    EXPECT_TRUE(LatticeSeries::agree(r.polynomial(), ctx.monomial(ctx.datum().zero(), Coeff::v_power(1)))) << r.str();
    Localized w = whittaker.apply(i, one);
    EXPECT_TRUE(LatticeSeries::agree(w.polynomial(), ctx.monomial(-ctx.datum().coroot(i), -Coeff::v_power(1))))
        << w.str();
  }
}

TEST(DL, MetaplecticDegreeOneOnOneGivesV) {
  StarContext ctx(MetaplecticDatum::plain(finite_cartan("A1"), 1));
  DLOperator op(ctx, Flavor::Spherical, true);
  Localized r = op.apply(0, Localized(ctx.monomial(ctx.datum().zero())));
  EXPECT_TRUE(LatticeSeries::agree(r.polynomial(), ctx.monomial(ctx.datum().zero(), Coeff::v_power(1))));
}

TEST(DL, WhittakerFlavorDecomposesIntoAtoms) {
  for (int n = 1; n <= 3; ++n) {
    StarContext ctx(MetaplecticDatum::plain(finite_cartan("A1"), n));
    DLOperator op(ctx, Flavor::Whittaker, true);
    Localized one(ctx.monomial(ctx.datum().zero()));
    const int64_t floor = -12;
    Coweight at = ctx.met().tilde_coroot(0);
    LatticeSeries expect = expand_atom(Atom::CFlat, at, 1, floor, n) * ctx.star_simple(0, one).expand(floor) +
                           expand_atom(Atom::B, at, 1, floor, n);
    LatticeSeries got = op.apply(0, one).expand(floor);
    EXPECT_TRUE(LatticeSeries::agree(got.with_floor(floor + 4), expect.with_floor(floor + 4))) << "n=" << n;
  }
}

TEST(DL, IdentityWordIsIdentity) {
  StarContext ctx(MetaplecticDatum::plain(finite_cartan("B2"), 2));
  DLOperator op(ctx, Flavor::Whittaker, true);
  Localized f(ctx.monomial(Coweight::of({1, -1})));
  EXPECT_TRUE(Localized::equal(op.apply_word({}, f), f));
}

TEST(DL, A1DegreeTwoWhittakerIsPolynomial) {
  StarContext ctx(MetaplecticDatum::plain(finite_cartan("A1"), 2));
  DLOperator op(ctx, Flavor::Whittaker, true);
  for (int k = -2; k <= 3; ++k) {
    Localized r = op.apply(0, Localized(ctx.monomial(Coweight::of({k}))));
    EXPECT_TRUE(r.is_polynomial()) << k << " " << r.str();
  }
}

TEST(DL, UpsilonSmallCases) {
  StarContext ctx(MetaplecticDatum::plain(finite_cartan("A1"), 1));
  DLOperator op(ctx, Flavor::Spherical, false);
  auto id = ctx.weyl().identity();
  auto s = ctx.weyl().from_word({0});
  auto t0 = upsilon(op, id, Coweight::of({2}));
  ASSERT_EQ(t0.size(), 1u);
  EXPECT_EQ(t0.begin()->first, Coweight::of({2}));
  EXPECT_EQ(t0.begin()->second, Coeff::scalar(1));
  auto t1 = upsilon(op, s, Coweight::of({0}));
  ASSERT_EQ(t1.size(), 1u);
  EXPECT_EQ(t1.at(Coweight::of({0})), Coeff::v_power(1));
  EXPECT_THROW(upsilon(op, s, Coweight::of({-1})), InvalidInput);
}

TEST(DL, UpsilonAgreesWithTruncatedExpansion) {
  StarContext ctx(MetaplecticDatum::plain(finite_cartan("A1"), 2));
  DLOperator op(ctx, Flavor::Whittaker, true);
  auto s = ctx.weyl().from_word({0});
  Coweight lam = Coweight::of({1});
  auto table = upsilon(op, s, lam);
  LatticeSeries expanded = op.apply(s, Localized(ctx.monomial(lam))).expand(-10);
  for (const auto& [mu, c] : table) EXPECT_EQ(expanded.coefficient(mu), c) << mu.str();
  for (const auto& [mu, c] : expanded.terms()) EXPECT_TRUE(table.count(mu)) << mu.str();
}

TEST(DLProperty, BraidRelationsBothFlavors) {
  for (const char* t : {"A1xA1", "A2", "B2", "G2"})
    for (int n = 1; n <= 3; ++n) {
      StarContext ctx(MetaplecticDatum::plain(finite_cartan(t), n));
      int h = ctx.datum().cartan().braid_order(0, 1);
      std::vector<int> w0, w1;
      for (int k = 0; k < h; ++k) {
        w0.push_back(k % 2);
        w1.push_back((k + 1) % 2);
      }
      for (Flavor f : {Flavor::Spherical, Flavor::Whittaker})
        for (bool meta : {false, true}) {
          DLOperator op(ctx, f, meta);
          for (const auto& lam : grid()) {
            Localized x(ctx.monomial(lam));
            EXPECT_TRUE(Localized::equal(op.apply_word(w0, x), op.apply_word(w1, x)))
                << t << " n=" << n << " " << to_string(f) << " " << lam.str();
          }
        }
    }
}

TEST(DLProperty, LengthOnOneIsVPower) {
  for (const char* t : {"A2", "B2", "G2"}) {
    StarContext ctx(MetaplecticDatum::plain(finite_cartan(t), 1));
    for (bool meta : {false, true}) {
      DLOperator op(ctx, Flavor::Spherical, meta);
      for (const auto& w : ctx.weyl().enumerate(12)) {
        Localized r = op.apply(w, Localized(ctx.monomial(ctx.datum().zero())));
        EXPECT_TRUE(LatticeSeries::agree(r.polynomial(),
                                         ctx.monomial(ctx.datum().zero(), Coeff::v_power(w.length()))))
            << t << " " << r.str();
      }
    }
  }
}

TEST(DLProperty, WhittakerOperatorsKeepDominantMonomialsPolynomial) {
  for (const char* t : {"A2", "B2"})
    for (int n = 1; n <= 3; ++n) {
      StarContext ctx(MetaplecticDatum::plain(finite_cartan(t), n));
      DLOperator op(ctx, Flavor::Whittaker, true);
      HeckeOrbit orbit(op, Coweight::of({1, 1}));
      for (const auto& w : ctx.weyl().enumerate(8)) {
        const Localized& r = orbit.value(w);
        EXPECT_TRUE(r.is_polynomial()) << t << " n=" << n;
        EXPECT_TRUE(Localized::equal(r, op.apply(w, Localized(ctx.monomial(Coweight::of({1, 1}))))));
      }
    }
}
