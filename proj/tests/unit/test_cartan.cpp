#include <gtest/gtest.h>

#include <random>

#include "kmw/cartan.hpp"
#include "kmw/weyl.hpp"
#include "test_support.hpp"

using namespace kmw;

namespace {

CartanMatrix rank2(int64_t a, int64_t b) { return CartanMatrix::from_rows({{2, -a}, {-b, 2}}); }

// Oracle for a connected rank-2 matrix: det = 4 - ab decides the type.
CartanKind rank2_kind(int64_t a, int64_t b) {
  if (a * b < 4) return CartanKind::Finite;
  if (a * b == 4) return CartanKind::Affine;
  return CartanKind::Indefinite;
}

std::vector<int64_t> mat_vec(const CartanMatrix& a, const std::vector<int64_t>& x) {
  std::vector<int64_t> y(a.size(), 0);
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

}  // namespace

TEST(Classify, FiniteA2) {
  auto c = classify(CartanMatrix::parse("[[2,-1],[-1,2]]"));
  EXPECT_EQ(c.overall(), CartanKind::Finite);
  EXPECT_EQ(c.label(), "A2");
}

TEST(Classify, AffineA11HasDeltaOneOne) {
  auto c = classify(CartanMatrix::parse("[[2,-2],[-2,2]]"));
  ASSERT_EQ(c.overall(), CartanKind::Affine);
  ASSERT_EQ(c.components.size(), 1u);
  EXPECT_EQ(c.components[0].delta, (std::vector<int64_t>{1, 1}));
  EXPECT_EQ(c.components[0].label, "A1(1)");
}

TEST(Classify, IndefiniteDeterminantNegative) {
  EXPECT_EQ(classify(CartanMatrix::parse("[[2,-3],[-3,2]]")).overall(), CartanKind::Indefinite);
}

TEST(Classify, RejectsNonGcm) {
  EXPECT_THROW(CartanMatrix::parse("[[2,-1],[0,2]]"), InvalidInput);
  EXPECT_THROW(CartanMatrix::parse("[[1,0],[0,2]]"), InvalidInput);
  EXPECT_THROW(CartanMatrix::parse("[[2,1],[1,2]]"), InvalidInput);
  EXPECT_THROW(CartanMatrix::parse("[[2,-1],[-1"), InvalidInput);
}

TEST(Classify, Rank2GridMatchesDeterminantOracle) {
  for (int64_t a = 1; a <= 5; ++a)
    for (int64_t b = 1; b <= 5; ++b) EXPECT_EQ(classify(rank2(a, b)).overall(), rank2_kind(a, b)) << a << "," << b;
}

TEST(Classify, ProductsSplitIntoComponents) {
  auto c = classify(CartanMatrix::from_rows({{2, 0, 0}, {0, 2, -2}, {0, -2, 2}}));
  ASSERT_EQ(c.components.size(), 2u);
  EXPECT_EQ(c.overall(), CartanKind::Affine);
}

TEST(Symmetrize, A11IsAllOnes) {
  auto s = symmetrize(cartan_from_label("A1(1)"));
  EXPECT_EQ(s.eps, (std::vector<Rational>{1, 1}));
}

TEST(Symmetrize, A22HasHalfAndTwo) {
  auto s = symmetrize(CartanMatrix::parse("[[2,-1],[-4,2]]"));
  EXPECT_EQ(s.eps, (std::vector<Rational>{Rational(1, 2), Rational(2)}));
}

TEST(Symmetrize, NonSymmetrizableCycleIsReported) {
  // Products around the triangle: (-1)(-1)(-1) against (-2)(-1)(-1).
  auto a = CartanMatrix::from_rows({{2, -1, -1}, {-1, 2, -1}, {-2, -1, 2}});
  try {
    symmetrize(a);
    FAIL() << "expected NotSymmetrizable";
  } catch (const NotSymmetrizable& e) {
    EXPECT_EQ(e.cycle().size(), 3u);
  }
}

TEST(SymmetrizeProperty, RandomSymmetricGcmGivesAllOnesAndSymmetricB) {
  std::mt19937_64 rng(test::seed());
  std::uniform_int_distribution<int> entry(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    int r = 2 + trial % 4;
    std::vector<std::vector<int64_t>> rows(r, std::vector<int64_t>(r, 2));
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) rows[i][j] = rows[j][i] = -entry(rng);
    auto s = symmetrize(CartanMatrix::from_rows(rows));
    for (const auto& e : s.eps) EXPECT_EQ(e, Rational(1));
  }
}

TEST(SymmetrizeProperty, EpsTimesBReproducesA) {
  for (const auto& f : affine_families())
    for (const auto& t : f.smallest(2)) {
      CartanMatrix a = t.cartan();
      auto s = symmetrize(a);
      for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j) {
          EXPECT_EQ(s.b[i][j], s.b[j][i]) << t.label();
          EXPECT_EQ(s.eps[i] * s.b[i][j], Rational(a(i, j))) << t.label();
        }
    }
}

TEST(AffineTable, C2HasDeltaTwoOneOne) {
  auto d = affine_table(AffineType::parse("C", 2, 1));
  EXPECT_EQ(d.delta, (std::vector<int64_t>{2, 1, 1}));
  EXPECT_EQ(d.delta_dual, (std::vector<int64_t>{1, 1, 1}));
}

TEST(AffineTable, G2Deltas) {
  auto d = affine_table(AffineType::parse("G", 2, 1));
  EXPECT_EQ(d.delta, (std::vector<int64_t>{2, 3, 1}));
  EXPECT_EQ(d.delta_dual, (std::vector<int64_t>{2, 1, 1}));
}

TEST(AffineTable, A11ExponentsOfA1) {
  EXPECT_EQ(affine_table(AffineType::parse("A", 1, 1)).exponents, (std::vector<int>{1}));
}

TEST(AffineTable, RankBelowMinimumIsRejected) {
  EXPECT_THROW(AffineType::parse("B", 2, 1), InvalidInput);
  EXPECT_THROW(AffineType::parse("D", 3, 1), InvalidInput);
}

TEST(AffineTableProperty, NullVectorsAreKernelsOfAAndTranspose) {
  for (const auto& f : affine_families())
    for (const auto& t : f.smallest(3)) {
      auto d = affine_table(t);
      for (auto x : mat_vec(d.cartan, d.delta)) EXPECT_EQ(x, 0) << t.label();
      for (auto x : mat_vec(d.cartan.transpose(), d.delta_dual)) EXPECT_EQ(x, 0) << t.label();
      for (auto x : d.delta) EXPECT_GT(x, 0);
      EXPECT_EQ(d.delta_dual.back(), 1) << t.label();
      EXPECT_EQ(classify(d.cartan).overall(), CartanKind::Affine);
    }
}

TEST(AffineTableProperty, ExponentsSumToNumberOfPositiveRoots) {
  // sum of exponents = |R+| = length of the longest element.
  for (const auto& f : affine_families())
    for (const auto& t : f.smallest(2)) {
      if (t.ell() > 4) continue;
      auto d = affine_table(t);
      std::vector<int> nodes;
      for (int i = 0; i + 1 < d.cartan.size(); ++i) nodes.push_back(i);
      CartanMatrix fin = d.cartan.principal(nodes);
      auto all = WeylGroup(fin).enumerate(64);
      int sum = 0;
      for (int e : d.exponents) sum += e;
      EXPECT_EQ(sum, all.back().length()) << t.label();
    }
}

TEST(Dual, TransposeOfA22IsAffine) {
  auto a = CartanMatrix::parse("[[2,-1],[-4,2]]");
  EXPECT_EQ(classify(a.transpose()).overall(), CartanKind::Affine);
}

TEST(Dual, Bl1TransposeIsA2lMinus1Twisted) {
  auto a = AffineType::parse("B", 3, 1).cartan().transpose();
  EXPECT_EQ(classify(a).label(), "A5(2)");
}

TEST(Dual, SymmetricIsSelfDual) {
  auto a = cartan_from_label("D4");
  EXPECT_EQ(a.transpose(), a);
}
