#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kmw/coeff.hpp"
#include "kmw/localfield.hpp"
#include "test_support.hpp"

using namespace kmw;

namespace {

Coeff random_coeff(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> c(-3, 3), e(-2, 3), g(0, n - 1), terms(0, 3);
  Coeff out(n);
  for (int t = terms(rng); t > 0; --t) {
    Coeff m = Coeff::v_power(e(rng), n) * Rational(c(rng));
    for (int k = terms(rng); k > 0; --k) m *= Coeff::gauss(g(rng), n);
    out += m;
  }
  return out;
}

}  // namespace

TEST(Coeff, GaussPairCollapsesToVInverse) {
  EXPECT_EQ(Coeff::gauss(1, 3) * Coeff::gauss(2, 3), Coeff::v_power(-1, 3));
}

TEST(Coeff, GZeroIsMinusOne) { EXPECT_EQ(Coeff::gauss(0, 3), Coeff::scalar(-1, 3)); }

TEST(Coeff, IndexReducedModN) { EXPECT_EQ(Coeff::gauss(5, 3), Coeff::gauss(2, 3)); }

TEST(Coeff, MiddleSquareCollapses) {
  EXPECT_EQ(Coeff::gauss(2, 4) * Coeff::gauss(2, 4), Coeff::v_power(-1, 4));
}

TEST(Coeff, MismatchedNRejected) {
  EXPECT_THROW(Coeff::gauss(1, 3) + Coeff::gauss(1, 4), InvalidInput);
}

TEST(Coeff, ParseExamples) {
  Coeff c = Coeff::parse("3*v^2*g1*g2 - v^-1", 4);
  Coeff expect = Coeff::v_power(2, 4) * Coeff::gauss(1, 4) * Coeff::gauss(2, 4) * Rational(3) - Coeff::v_power(-1, 4);
  EXPECT_EQ(c, expect);
  EXPECT_THROW(Coeff::parse("3*w", 2), InvalidInput);
  EXPECT_THROW(Coeff::parse("g", 2), InvalidInput);
}

TEST(CoeffProperty, ParseRoundTrip) {
  std::mt19937_64 rng(test::seed());
  for (int n = 1; n <= 6; ++n)
    for (int t = 0; t < 40; ++t) {
      Coeff c = random_coeff(rng, n);
      EXPECT_EQ(Coeff::parse(c.str(), n), c) << c.str();
    }
}

TEST(CoeffProperty, RingAxioms) {
  std::mt19937_64 rng(test::seed() + 1);
  for (int n = 1; n <= 6; ++n)
    for (int t = 0; t < 40; ++t) {
      Coeff a = random_coeff(rng, n), b = random_coeff(rng, n), c = random_coeff(rng, n);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_TRUE((a - a).is_zero());
    }
}

TEST(CoeffProperty, NormalFormInvariants) {
  std::mt19937_64 rng(test::seed() + 2);
  for (int n = 2; n <= 6; ++n)
    for (int t = 0; t < 40; ++t) {
      Coeff c = random_coeff(rng, n) * random_coeff(rng, n);
      for (const auto& [key, value] : c.terms()) {
        auto idx = key.gauss_indices();
        for (int k : idx) {
          EXPECT_GE(k, 1);
          EXPECT_LT(k, n);
          EXPECT_EQ(std::count(idx.begin(), idx.end(), n - k) == 0 || 2 * k == n, true);
        }
        if (n % 2 == 0) { EXPECT_LE(std::count(idx.begin(), idx.end(), n / 2), 1); }
        EXPECT_NE(value, Rational(0));
      }
    }
}

TEST(Specialize, BasicValues) {
  GaussTable t(5, 2);
  EXPECT_EQ(specialize(Coeff::v_power(1, 2), t).rational_value(), Rational(1, 5));
  EXPECT_EQ(specialize(Coeff::gauss(0, 2), t).rational_value(), Rational(-1));
  EXPECT_EQ(specialize(Coeff::gauss(1, 2), t) * specialize(Coeff::gauss(-1, 2), t), t.field().from_rational(5));
}

TEST(SpecializeProperty, RingHomomorphism) {
  std::mt19937_64 rng(test::seed() + 3);
  for (auto [q, n] : std::vector<std::pair<int64_t, int>>{{5, 2}, {13, 3}, {7, 3}, {13, 2}}) {
    GaussTable t(q, n);
    for (int k = 0; k < 20; ++k) {
      Coeff a = random_coeff(rng, n), b = random_coeff(rng, n);
      EXPECT_EQ(specialize(a * b, t), specialize(a, t) * specialize(b, t));
      EXPECT_EQ(specialize(a + b, t), specialize(a, t) + specialize(b, t));
    }
  }
}

TEST(Specialize, RejectsBadField) {
  EXPECT_THROW(GaussTable(7, 2), InvalidInput);
  EXPECT_THROW(GaussTable(12, 1), InvalidInput);
}
