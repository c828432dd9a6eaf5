#include <gtest/gtest.h>

#include <random>

#include "kmw/series.hpp"
#include "kmw/weyl.hpp"
#include "test_support.hpp"

using namespace kmw;

namespace {

Coeff v(int e = 1) { return Coeff::v_power(e, 1); }
Coeff one() { return Coeff::scalar(1); }
Coeff num(int64_t c) { return Coeff::scalar(c); }

LatticeSeries mono1(int64_t k, const Coeff& c) { return LatticeSeries::monomial(1, 1, Coweight::of({k}), c); }

LatticeSeries line(std::initializer_list<std::pair<int64_t, Coeff>> terms) {
  LatticeSeries s(1, 1);
  for (const auto& [k, c] : terms) s += mono1(k, c);
  return s;
}

LatticeSeries random_series(std::mt19937_64& rng, int64_t floor) {
  std::uniform_int_distribution<int> coef(-2, 2), x(-2, 1), y(-2, 1), ve(0, 2);
  LatticeSeries s(2, 2);
  for (int t = 0; t < 4; ++t)
    s += LatticeSeries::monomial(2, 2, Coweight::of({x(rng), y(rng)}), Coeff::v_power(ve(rng)) * Rational(coef(rng)));
  return s.truncated(floor);
}

}  // namespace

TEST(Series, MonomialProduct) {
  EXPECT_TRUE(LatticeSeries::agree(mono1(1, one()) * mono1(-1, one()), mono1(0, one())));
}

TEST(Series, BinomialSquare) {
  auto x = line({{0, one()}, {-1, one()}});
  EXPECT_TRUE(LatticeSeries::agree(x * x, line({{0, one()}, {-1, num(2)}, {-2, one()}})));
}

TEST(Series, TruncationDepthIsMinimum) {
  auto a = line({{0, one()}, {-1, one()}}).truncated(-3);
  auto b = line({{0, one()}, {-1, one()}}).truncated(-5);
  auto p = a * b;
  EXPECT_EQ(p.floor(), -3);
  EXPECT_FALSE(p.is_exact());
}

TEST(Series, RelabelBySimpleReflection) {
  WeylGroup w(finite_cartan("A1"));
  auto s = w.from_word({0});
  EXPECT_TRUE(LatticeSeries::agree(mono1(1, one()).relabel(s), mono1(-1, one())));
  EXPECT_TRUE(LatticeSeries::agree(mono1(0, one()).relabel(s), mono1(0, one())));
  auto f = line({{0, one()}, {-1, -v()}});
  EXPECT_TRUE(LatticeSeries::agree(f.relabel(s), line({{0, one()}, {1, -v()}})));
}

TEST(Atoms, BExpansion) {
  auto b = expand_atom(Atom::B, Coweight::of({1}), 1, -3);
  Coeff c = one() - v();
  EXPECT_TRUE(LatticeSeries::agree(b, line({{-1, c}, {-2, c}, {-3, c}}).truncated(-3))) << b.str();
}

TEST(Atoms, CExpansion) {
  auto c = expand_atom(Atom::C, Coweight::of({1}), 1, -2);
  Coeff vm1 = v() - one();
  EXPECT_TRUE(LatticeSeries::agree(c, line({{0, v()}, {-1, vm1}, {-2, vm1}}).truncated(-2))) << c.str();
}

TEST(Atoms, CFlatExpansion) {
  auto c = expand_atom(Atom::CFlat, Coweight::of({1}), 1, -2);
  EXPECT_TRUE(LatticeSeries::agree(c, line({{-1, -one()}, {-2, v() - one()}}).truncated(-2))) << c.str();
}

TEST(AtomsProperty, CAndCFlatSymmetricProductsAgree) {
  const int64_t floor = -20;
  auto lhs = expand_atom(Atom::C, Coweight::of({1}), 1, floor) * expand_atom(Atom::C, Coweight::of({-1}), 1, floor);
  auto rhs =
      expand_atom(Atom::CFlat, Coweight::of({1}), 1, floor) * expand_atom(Atom::CFlat, Coweight::of({-1}), 1, floor);
  EXPECT_TRUE(LatticeSeries::agree(lhs, rhs));
  EXPECT_EQ(lhs.coefficient(Coweight::of({0})), v());
  EXPECT_EQ(lhs.coefficient(Coweight::of({-1})), -one() + v() * Rational(2) - v(2));
}

TEST(AtomsProperty, ExpansionTimesDenominatorIsNumerator) {
  // (1 - X) c(X) = 1 - vX with X = e^{beta}, retained above the floor.
  for (auto beta : {Coweight::of({1, 0}), Coweight::of({1, 1}), Coweight::of({-1, 0}), Coweight::of({0, -2})}) {
    const int64_t floor = -8;
    LatticeSeries x = LatticeSeries::monomial(2, 2, beta, one());
    LatticeSeries unit = LatticeSeries::constant(2, 2, one());
    auto lhs = (unit - x) * expand_atom(Atom::C, beta, 2, floor);
    auto rhs = (unit - x.scaled(v())).truncated(floor + std::min<int64_t>(0, beta.prefix_sum(2)));
    EXPECT_TRUE(LatticeSeries::agree(lhs.with_floor(floor + 2), rhs.with_floor(floor + 2))) << beta.str();
  }
}

TEST(Series, ConstantTermKeepsImaginaryMultiples) {
  const int dim = 3, rank = 2;
  Coweight c = Coweight::of({1, 1, 0});
  LatticeSeries s = LatticeSeries::constant(dim, rank, one()) +
                    LatticeSeries::monomial(dim, rank, Coweight::of({-1, 0, 0}), one()) +
                    LatticeSeries::monomial(dim, rank, -c, one());
  auto ct = s.constant_term(c);
  EXPECT_TRUE(LatticeSeries::agree(
      ct, LatticeSeries::constant(dim, rank, one()) + LatticeSeries::monomial(dim, rank, -c, one())));
  auto e0 = LatticeSeries::constant(dim, rank, one());
  EXPECT_TRUE(LatticeSeries::agree(e0.constant_term(c), e0));
}

TEST(SeriesProperty, TruncatedArithmeticIsAssociativeAndDistributive) {
  std::mt19937_64 rng(test::seed());
  for (int t = 0; t < 30; ++t) {
    auto a = random_series(rng, -6), b = random_series(rng, -6), c = random_series(rng, -6);
    EXPECT_TRUE(LatticeSeries::agree((a * b) * c, a * (b * c)));
    EXPECT_TRUE(LatticeSeries::agree(a * (b + c), a * b + a * c));
  }
}

TEST(SeriesProperty, ExactToTruncatedCommutesWithOps) {
  std::mt19937_64 rng(test::seed() + 1);
  std::uniform_int_distribution<int> x(-2, 1);
  for (int t = 0; t < 30; ++t) {
    LatticeSeries a(2, 2), b(2, 2);
    for (int k = 0; k < 3; ++k) {
      a += LatticeSeries::monomial(2, 2, Coweight::of({x(rng), x(rng)}), Coeff::v_power(k));
      b += LatticeSeries::monomial(2, 2, Coweight::of({x(rng), x(rng)}), Coeff::scalar(k + 1));
    }
    const int64_t f = -3;
    EXPECT_TRUE(LatticeSeries::agree((a * b).truncated(f), a.truncated(f) * b.truncated(f)));
    EXPECT_TRUE(LatticeSeries::agree((a + b).truncated(f), a.truncated(f) + b.truncated(f)));
  }
}
