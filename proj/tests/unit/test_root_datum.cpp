#include <gtest/gtest.h>

#include <random>

#include "kmw/root_datum.hpp"
#include "test_support.hpp"

using namespace kmw;

namespace {

std::string tilde_label(const std::string& affine, int n) {
  RootDatum d = RootDatum::simply_connected(cartan_from_label(affine));
  MetaplecticDatum m(d, QuadraticForm::standard(d), n);
  return classify(m.tilde_cartan()).label();
}

}  // namespace

TEST(RootDatum, FiniteHasNoDerivation) {
  auto d = RootDatum::simply_connected(finite_cartan("A2"));
  EXPECT_EQ(d.dim(), 2);
  EXPECT_TRUE(d.derivation_nodes().empty());
}

TEST(RootDatum, AffineAddsOneDerivation) {
  auto d = RootDatum::simply_connected(cartan_from_label("A1(1)"));
  EXPECT_EQ(d.dim(), 3);
  EXPECT_EQ(d.pairing(Coweight::of({0, 0, 1}), 0), 0);
  EXPECT_EQ(d.pairing(Coweight::of({0, 0, 1}), 1), 1);
}

TEST(StandardForm, Values) {
  auto vals = [](const std::string& t) {
    return QuadraticForm::standard(RootDatum::simply_connected(cartan_from_label(t))).values();
  };
  EXPECT_EQ(vals("A1(1)"), (std::vector<int64_t>{1, 1}));
  EXPECT_EQ(vals("G2(1)"), (std::vector<int64_t>{1, 3, 1}));
  EXPECT_EQ(vals("A2(2)"), (std::vector<int64_t>{1, 4}));
}

TEST(StandardForm, NonInvariantValuesRejected) {
  auto d = RootDatum::simply_connected(finite_cartan("B2"));
  EXPECT_THROW(QuadraticForm::from_values(d, {1, 1}), InvalidInput);
  EXPECT_NO_THROW(QuadraticForm::from_values(d, {1, 2}));
}

TEST(FormProperty, BilinearFormMatchesCartanAndIsInvariant) {
  std::mt19937_64 rng(test::seed());
  std::uniform_int_distribution<int> coord(-3, 3);
  for (const auto& f : affine_families())
    for (const auto& t : f.smallest(2)) {
      auto d = RootDatum::simply_connected(t.cartan());
      auto q = QuadraticForm::standard(d);
      for (int i = 0; i < d.rank(); ++i)
        for (int j = 0; j < d.rank(); ++j)
          EXPECT_EQ(q.bilinear(d.coroot(j), d.coroot(i)), q.q(i) * d.cartan()(j, i)) << t.label();
      for (int trial = 0; trial < 10; ++trial) {
        Coweight y(d.dim());
        for (int k = 0; k < d.rank(); ++k) y[k] = coord(rng);
        for (int i = 0; i < d.rank(); ++i) EXPECT_EQ(q.value(d.reflect(i, y)), q.value(y)) << t.label();
      }
    }
}

TEST(Metaplectic, A1CoverOfDegreeTwo) {
  auto m = MetaplecticDatum::plain(finite_cartan("A1"), 2);
  EXPECT_EQ(m.tilde_coroot(0), Coweight::of({2}));
  EXPECT_EQ(m.tilde_cartan(), CartanMatrix::from_rows({{2}}));
}

TEST(Metaplectic, A22WithFormOneFour) {
  auto d = RootDatum::simply_connected(cartan_from_label("A2(2)"));
  MetaplecticDatum m(d, QuadraticForm::from_values(d, {1, 4}), 2);
  EXPECT_EQ(m.tilde_cartan(), CartanMatrix::from_rows({{2, -2}, {-2, 2}}));
}

TEST(Metaplectic, TypesOfTildeCartan) {
  EXPECT_EQ(tilde_label("B3(1)", 2), "A5(2)");
  EXPECT_EQ(tilde_label("C2(1)", 3), "C2(1)");
  EXPECT_EQ(tilde_label("D4(3)", 3), "G2(1)");
  EXPECT_EQ(tilde_label("A4(2)", 4), "A4(2)");
}

TEST(MetaplecticProperty, NOneLeavesCartanUnchanged) {
  for (const auto& f : affine_families())
    for (const auto& t : f.smallest(2)) {
      auto d = RootDatum::simply_connected(t.cartan());
      MetaplecticDatum m(d, QuadraticForm::standard(d), 1);
      EXPECT_EQ(m.tilde_cartan(), t.cartan()) << t.label();
    }
}

TEST(MetaplecticProperty, TildeCartanIsGcmOfScaledCoroots) {
  for (int n = 1; n <= 6; ++n)
    for (const char* t : {"B2", "G2", "C3", "A2(2)", "G2(1)"}) {
      auto d = RootDatum::simply_connected(cartan_from_label(t));
      MetaplecticDatum m(d, QuadraticForm::standard(d), n);
      for (int i = 0; i < d.rank(); ++i) {
        EXPECT_EQ(m.n_i(i), n / std::gcd<int64_t>(n, m.form().q(i)));
        for (int j = 0; j < d.rank(); ++j)
          EXPECT_EQ(m.tilde_cartan()(i, j) * m.n_i(j), m.n_i(i) * d.cartan()(i, j)) << t << " n=" << n;
      }
    }
}
