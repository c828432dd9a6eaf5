#include <gtest/gtest.h>

#include "kmw/symmetrizer.hpp"
#include "test_support.hpp"

using namespace kmw;
using test::Line;

namespace {

// prod_{j >= 1} prod_i (1 - v^{m_i} x^j) / (1 - v^{m_i + 1} x^j) as a power series
// in x = e^{-c}, keyed by -j, through x^depth.
Line macdonald_product(const std::vector<int>& exponents, int depth) {
  Line out;
  test::add_to(out, 0, Coeff::scalar(1));
  auto truncate = [&](Line l) {
    for (auto it = l.begin(); it != l.end();) it = it->first < -depth ? l.erase(it) : std::next(it);
    return l;
  };
  for (int j = 1; j <= depth; ++j)
    for (int m : exponents) {
      Line num, geo;
      test::add_to(num, 0, Coeff::scalar(1));
      test::add_to(num, -j, -Coeff::v_power(m));
      for (int k = 0; k * j <= depth; ++k) test::add_to(geo, -k * j, Coeff::v_power((m + 1) * k));
      out = truncate(test::mul(out, truncate(test::mul(num, geo))));
    }
  return out;
}

Line along_imaginary(const LatticeSeries& s, const Coweight& c) {
  Line out;
  for (const auto& [mu, coeff] : s.terms()) {
    int64_t k = mu.prefix_sum(s.rank()) / c.prefix_sum(s.rank());
    EXPECT_EQ(mu, (k * c)) << "term off the imaginary line: " << mu.str();
    test::add_to(out, k, coeff);
  }
  return out;
}

}  // namespace

TEST(Multiplicities, FiniteA2AllOne) {
  StarContext ctx(MetaplecticDatum::plain(finite_cartan("A2"), 1));
  Symmetrizer s(ctx, false);
  const auto& t = s.multiplicities(4);
  EXPECT_EQ(t.entries.size(), 3u);
  for (const auto& [b, m] : t.entries) EXPECT_EQ(m, 1);
}

TEST(Multiplicities, ImaginaryA11AndA21) {
  for (auto [label, expect, kmax] : std::vector<std::tuple<const char*, int64_t, int>>{{"A1(1)", 1, 10}, {"A2(1)", 2, 6}}) {
    StarContext ctx(MetaplecticDatum::plain(cartan_from_label(label), 1));
    Symmetrizer s(ctx, false);
    const Coweight& c = s.base_imaginary();
    const auto& t = s.multiplicities(kmax * s.depth_unit());
    for (int k = 1; k <= kmax; ++k) EXPECT_EQ(t.multiplicity(k * c), expect) << label << " k=" << k;
    for (const auto& b : t.real()) EXPECT_EQ(t.multiplicity(b), 1);
  }
}

TEST(Delta, A1Expansion) {
  StarContext ctx(MetaplecticDatum::plain(finite_cartan("A1"), 1));
  Symmetrizer s(ctx, false);
  LatticeSeries d = s.delta(-4);
  EXPECT_EQ(d.coefficient(Coweight::of({0})), Coeff::scalar(1));
  for (int k = 1; k <= 4; ++k) EXPECT_EQ(d.coefficient(Coweight::of({-k})), Coeff::scalar(1) - Coeff::v_power(1));
  EXPECT_TRUE(LatticeSeries::agree(s.delta_w(ctx.weyl().identity(), -4), d));
}

TEST(Correction, FiniteIsOne) {
  StarContext ctx(MetaplecticDatum::plain(finite_cartan("B2"), 1));
  Symmetrizer s(ctx, false);
  LatticeSeries m = s.correction_factor(CorrectionMethod::FiniteOne, -5);
  EXPECT_EQ(m.size(), 1u);
  EXPECT_EQ(m.coefficient(ctx.datum().zero()), Coeff::scalar(1));
}

TEST(Correction, ExponentProductOutsideUntwistedRejected) {
  StarContext ctx(MetaplecticDatum::plain(cartan_from_label("A2(2)"), 1));
  Symmetrizer s(ctx, false);
  EXPECT_THROW(s.correction_factor(CorrectionMethod::ExponentProduct, -8), InvalidInput);
}

TEST(CorrectionProperty, AffineRoutesMatchExponentProductOracle) {
  for (auto [label, exps, depth] :
       std::vector<std::tuple<const char*, std::vector<int>, int>>{{"A1(1)", {1}, 4}, {"A2(1)", {1, 2}, 3}}) {
    StarContext ctx(MetaplecticDatum::plain(cartan_from_label(label), 1));
    Symmetrizer s(ctx, false);
    int64_t floor = -depth * s.depth_unit();
    Line oracle = macdonald_product(exps, depth);
    for (auto m : {CorrectionMethod::MacdonaldCt, CorrectionMethod::ExponentProduct,
                   CorrectionMethod::ViswanathDivision}) {
      LatticeSeries got = s.correction_factor(m, floor, 24);
      EXPECT_EQ(test::str(along_imaginary(got, s.base_imaginary())), test::str(oracle)) << label << " " << to_string(m);
    }
  }
}

TEST(Symmetrizer, A2SphericalOfOneIsPoincarePolynomial) {
  StarContext ctx(MetaplecticDatum::plain(finite_cartan("A2"), 1));
  Symmetrizer s(ctx, false);
  Localized p = s.hecke_exact(Flavor::Spherical, ctx.datum().zero());
  Coeff expect = Coeff::scalar(1) + Coeff::v_power(1) * Rational(2) + Coeff::v_power(2) * Rational(2) + Coeff::v_power(3);
  EXPECT_TRUE(LatticeSeries::agree(p.polynomial(), ctx.monomial(ctx.datum().zero(), expect)));
}

TEST(Symmetrizer, A1WhittakerFlavorOfOneEqualsSimple) {
  StarContext ctx(MetaplecticDatum::plain(finite_cartan("A1"), 1));
  Symmetrizer s(ctx, false);
  EXPECT_TRUE(Localized::equal(s.hecke_exact(Flavor::Whittaker, ctx.datum().zero()),
                               s.simple_exact(Flavor::Whittaker, ctx.datum().zero())));
}

TEST(Symmetrizer, ViswanathIdentityA2) {
  StarContext ctx(MetaplecticDatum::plain(finite_cartan("A2"), 1));
  Symmetrizer s(ctx, false);
  Localized sum(ctx.zero());
  LatticeSeries poincare = ctx.zero();
  for (const auto& w : ctx.weyl().enumerate(3)) {
    sum += s.delta_w_exact(w);
    poincare += ctx.monomial(ctx.datum().zero(), Coeff::v_power(w.length()));
  }
  EXPECT_TRUE(Localized::equal(sum, Localized(poincare)));
}

TEST(SymmetrizerProperty, FiniteProportionality) {
  for (auto [label, n] : std::vector<std::pair<const char*, int>>{{"A1", 1}, {"A2", 1}, {"B2", 1}, {"A1", 2}, {"A2", 2}}) {
    StarContext ctx(MetaplecticDatum::plain(finite_cartan(label), n));
    for (bool meta : {false, true}) {
      if (!meta && n > 1) continue;
      Symmetrizer s(ctx, meta);
      std::vector<Coweight> lams{ctx.datum().zero()};
      for (const auto& y : {Coweight::of({1}), Coweight::of({2}), Coweight::of({1, 1}), Coweight::of({2, 1}),
                            Coweight::of({1, 2})})
        if (y.dim() == ctx.dim() && ctx.datum().is_dominant(y)) lams.push_back(y);
      for (Flavor f : {Flavor::Spherical, Flavor::Whittaker})
        for (const auto& lam : lams) {
          auto r = s.check_proportionality(f, lam, 0, 0);
          EXPECT_TRUE(r.ok()) << label << " n=" << n << " " << to_string(f) << " " << lam.str() << " "
                              << describe(r.mismatches);
          EXPECT_TRUE(r.exact);
        }
    }
  }
}

TEST(SymmetrizerProperty, AffineMetaplecticProportionalityStabilizes) {
  StarContext ctx(MetaplecticDatum::plain(cartan_from_label("A1(1)"), 2));
  Symmetrizer s(ctx, true);
  auto r = s.check_proportionality(Flavor::Whittaker, ctx.datum().zero(), 3, 12);
  EXPECT_TRUE(r.stabilized);
  EXPECT_TRUE(r.mismatches.empty()) << describe(r.mismatches);
}

TEST(SymmetrizerProperty, IdentityComponentsAgree) {
  StarContext fin(MetaplecticDatum::plain(finite_cartan("A2"), 1));
  EXPECT_TRUE(Symmetrizer(fin, false).check_identity_components(0, 0).ok());
  StarContext aff(MetaplecticDatum::plain(cartan_from_label("A1(1)"), 1));
  auto r = Symmetrizer(aff, false).check_identity_components(3, 10, 12);
  EXPECT_TRUE(r.ok()) << describe(r.mismatches);
}
