#include <gtest/gtest.h>

#include <numeric>

#include "kmw/cg.hpp"
#include "test_support.hpp"

using namespace kmw;
using test::Line;

namespace {

MetaplecticDatum a1_datum(int64_t q, int n) {
  auto d = RootDatum::simply_connected(finite_cartan("A1"));
  return MetaplecticDatum(d, QuadraticForm::from_values(d, {q}), n);
}

// Right-hand side of (1 - v e^{-n_a a}) (s ⋆ e^{k a}) written out for the rank-one
// datum with Q(a^vee) = q: e^{-k}[(1 - v) e^{r} - v g_{q + 2qk} e^{n_a - 1}(1 - e^{-n_a})]
// with r = 2k mod n_a.
Line rank1_star_numerator(int64_t q, int n, int64_t k) {
  int64_t na = n / std::gcd<int64_t>(n, q);
  int64_t r = ((2 * k) % na + na) % na;
  Coeff one = Coeff::scalar(1, n), v = Coeff::v_power(1, n);
  Coeff g = Coeff::gauss(q + 2 * q * k, n);
  Line out;
  test::add_to(out, -k + r, one - v);
  test::add_to(out, -k + na - 1, -(v * g));
  test::add_to(out, -k - 1, v * g);
  return out;
}

Line denominator(int64_t na, int n) {
  Line d;
  test::add_to(d, 0, Coeff::scalar(1, n));
  test::add_to(d, -na, -Coeff::v_power(1, n));
  return d;
}

const std::vector<const char*> kRank2 = {"A1xA1", "A2", "B2", "G2"};

std::vector<Coweight> grid() {
  std::vector<Coweight> out;
  for (int x = -2; x <= 2; ++x)
    for (int y = -1; y <= 2; ++y) out.push_back(Coweight::of({x, y}));
  return out;
}

}  // namespace

TEST(Star, RankOneMatchesDefiningFormula) {
  for (int64_t q : {1, 2, 3})
    for (int n = 1; n <= 5; ++n) {
      StarContext ctx(a1_datum(q, n));
      int64_t na = ctx.met().n_i(0);
      for (int64_t k = -3; k <= 3; ++k) {
        Localized s = ctx.star_simple(0, Localized(ctx.monomial(Coweight::of({k}))));
        LatticeSeries den(1, 1, n);
        for (const auto& [e, c] : denominator(na, n)) den += ctx.monomial(Coweight::of({e}), c);
        Localized prod = s.times(den);
        prod.cancel();
        ASSERT_TRUE(prod.is_polynomial()) << "q=" << q << " n=" << n << " k=" << k;
        Line got = test::from_series(prod.polynomial());
        Line want = rank1_star_numerator(q, n, k);
        EXPECT_EQ(test::str(got), test::str(want)) << "q=" << q << " n=" << n << " k=" << k;
      }
    }
}

TEST(Star, DegreeOneIsReflection) {
  for (const char* t : kRank2) {
    StarContext ctx(MetaplecticDatum::plain(finite_cartan(t), 1));
    for (const auto& lam : grid())
      for (int i = 0; i < 2; ++i) {
        Localized f(ctx.monomial(lam));
        EXPECT_TRUE(Localized::equal(ctx.star_simple(i, f), ctx.reflect(i, f))) << t << " " << lam.str();
      }
  }
}

TEST(Star, InvolutionA1DegreeTwo) {
  StarContext ctx(a1_datum(1, 2));
  for (int64_t k : {0, 1, 2}) {
    Localized f(ctx.monomial(Coweight::of({k})));
    EXPECT_TRUE(Localized::equal(ctx.star_simple(0, ctx.star_simple(0, f)), f)) << k;
  }
}

TEST(Star, ResidueOfPairing) {
  auto m = a1_datum(1, 2);
  EXPECT_EQ(m.form().bilinear(Coweight::of({1}), Coweight::of({1})), 2 * m.form().q(0));
  EXPECT_EQ(m.residue(Coweight::of({1}), 0), 0);
}

TEST(Star, BraidA2DegreeTwo) {
  StarContext ctx(MetaplecticDatum::plain(finite_cartan("A2"), 2));
  for (const auto& lam : {Coweight::of({0, 0}), Coweight::of({1, 0})}) {
    Localized f(ctx.monomial(lam));
    EXPECT_TRUE(Localized::equal(ctx.star_word({0, 1, 0}, f), ctx.star_word({1, 0, 1}, f))) << lam.str();
  }
}

TEST(Star, WordCompositionAssociates) {
  StarContext ctx(MetaplecticDatum::plain(finite_cartan("B2"), 2));
  Localized f(ctx.monomial(Coweight::of({1, -1})));
  Localized whole = ctx.star_word({0, 1, 0, 1}, f);
  Localized split = ctx.star_word({0, 1}, ctx.star_word({0, 1}, f));
  Localized stepwise = ctx.star_simple(0, ctx.star_simple(1, ctx.star_simple(0, ctx.star_simple(1, f))));
  EXPECT_TRUE(Localized::equal(whole, split));
  EXPECT_TRUE(Localized::equal(whole, stepwise));
}

TEST(StarProperty, WActionOnRank2Types) {
  for (const char* t : kRank2)
    for (int n = 1; n <= 3; ++n) {
      StarContext ctx(MetaplecticDatum::plain(finite_cartan(t), n));
      int h = ctx.datum().cartan().braid_order(0, 1);
      std::vector<int> w0, w1;
      for (int k = 0; k < h; ++k) {
        w0.push_back(k % 2);
        w1.push_back((k + 1) % 2);
      }
      for (const auto& lam : grid()) {
        Localized f(ctx.monomial(lam));
        EXPECT_TRUE(Localized::equal(ctx.star_word(w0, f), ctx.star_word(w1, f))) << t << " n=" << n;
        for (int i = 0; i < 2; ++i)
          EXPECT_TRUE(Localized::equal(ctx.star_simple(i, ctx.star_simple(i, f)), f)) << t << " n=" << n;
      }
    }
}

TEST(StarProperty, TwistedLinearityForCoverLatticeMonomials) {
  for (const char* t : {"A2", "B2"})
    for (int n = 2; n <= 3; ++n) {
      StarContext ctx(MetaplecticDatum::plain(finite_cartan(t), n));
      const auto& basis = ctx.met().ytilde_basis();
      for (int col = 0; col < basis.cols(); ++col) {
        Coweight h(2);
        for (int r = 0; r < 2; ++r) h[r] = static_cast<int32_t>(basis(r, col));
        ASSERT_TRUE(ctx.met().in_ytilde(h));
        for (const auto& lam : grid())
          for (int i = 0; i < 2; ++i) {
            Localized lhs = ctx.star_simple(i, Localized(ctx.monomial(lam + h)));
            Localized rhs = ctx.star_simple(i, Localized(ctx.monomial(lam))).shifted(ctx.datum().reflect(i, h));
            EXPECT_TRUE(Localized::equal(lhs, rhs)) << t << " n=" << n << " h=" << h.str();
          }
      }
    }
}

TEST(StarProperty, SupportAndPolynomiality) {
  for (const char* t : kRank2)
    for (int n = 1; n <= 3; ++n) {
      StarContext ctx(MetaplecticDatum::plain(finite_cartan(t), n));
      for (const auto& lam : grid())
        for (int i = 0; i < 2; ++i) {
          Localized s = ctx.star_simple(i, Localized(ctx.monomial(lam)));
          LatticeSeries p = s.expand(ctx.datum().height(lam) - 12);
          EXPECT_TRUE(v_polynomial(p)) << t << " n=" << n << " " << lam.str();
          if (ctx.datum().pairing(lam, i) >= -1) {
            LatticeSeries shifted = p.shifted(-ctx.met().tilde_coroot(i));
            EXPECT_TRUE(support_below(shifted, lam)) << t << " n=" << n << " " << lam.str();
          }
        }
    }
}
