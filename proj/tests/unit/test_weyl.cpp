#include <gtest/gtest.h>

#include <random>
#include <set>

#include "kmw/weyl.hpp"
#include "test_support.hpp"

using namespace kmw;

namespace {

Coweight cw(std::initializer_list<int64_t> xs) { return Coweight::of(xs); }

// Root coordinates (x, y) = x a + y b with m = <b, a^vee> and n = <a, b^vee>.
struct Rank2Roots {
  int64_t m, n;
  std::pair<int64_t, int64_t> sa(std::pair<int64_t, int64_t> r) const {
    return {r.first - (2 * r.first + m * r.second), r.second};
  }
  std::pair<int64_t, int64_t> sb(std::pair<int64_t, int64_t> r) const {
    return {r.first, r.second - (n * r.first + 2 * r.second)};
  }
  // Applies the word right to left.
  std::pair<int64_t, int64_t> act(const std::string& word, std::pair<int64_t, int64_t> r) const {
    for (auto it = word.rbegin(); it != word.rend(); ++it) r = *it == 'a' ? sa(r) : sb(r);
    return r;
  }
};

std::string power(const std::string& w, int k) {
  std::string s;
  for (int i = 0; i < k; ++i) s += w;
  return s;
}

int64_t ev(const IntPoly& p, int64_t x) {
  Rational r = eval_poly(p, Rational(x));
  return std::stoll(r.str());
}

}  // namespace

TEST(Reflect, A1NegatesCoroot) {
  RootDatum d = RootDatum::simply_connected(finite_cartan("A1"));
  EXPECT_EQ(d.reflect(0, cw({1})), cw({-1}));
}

TEST(Reflect, A11FixesDerivationUnderFiniteReflection) {
  RootDatum d = RootDatum::simply_connected(cartan_from_label("A1(1)"));
  ASSERT_EQ(d.dim(), 3);
  EXPECT_EQ(d.reflect(0, cw({0, 0, 1})), cw({0, 0, 1}));
}

TEST(Reflect, A2SendsSecondCorootToSum) {
  RootDatum d = RootDatum::simply_connected(finite_cartan("A2"));
  EXPECT_EQ(d.reflect(0, cw({0, 1})), cw({1, 1}));
}

TEST(Words, A2SquareIsIdentity) {
  WeylGroup w(finite_cartan("A2"));
  EXPECT_TRUE(w.from_word({0, 0}).is_identity());
}

TEST(Words, A2BraidRelation) {
  WeylGroup w(finite_cartan("A2"));
  EXPECT_EQ(w.from_word({0, 1, 0}), w.from_word({1, 0, 1}));
  EXPECT_EQ(w.from_word({0, 1, 0}).length(), 3);
}

TEST(Words, B2LongWordReduces) {
  WeylGroup w(finite_cartan("B2"));
  auto x = w.from_word({0, 1, 0, 1, 1, 0});
  EXPECT_EQ(x, w.from_word({0, 1}));
  EXPECT_EQ(x.length(), 2);
}

TEST(Inversions, A2ReducedWord) {
  WeylGroup w(finite_cartan("A2"));
  auto b = w.inversion_coroots({0, 1});
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0], cw({1, 0}));
  EXPECT_EQ(b[1], cw({1, 1}));
}

TEST(Inversions, SingleLetter) {
  WeylGroup w(finite_cartan("G2"));
  EXPECT_EQ(w.inversion_coroots({1}), std::vector<Coweight>{cw({0, 1})});
}

TEST(Inversions, NonReducedWordProducesOppositePair) {
  WeylGroup w(finite_cartan("A2"));
  auto b = w.inversion_coroots({0, 0});
  EXPECT_EQ(b, (std::vector<Coweight>{cw({1, 0}), cw({-1, 0})}));
}

TEST(Enumerate, Counts) {
  EXPECT_EQ(WeylGroup(finite_cartan("A1")).enumerate(5).size(), 2u);
  EXPECT_EQ(WeylGroup(finite_cartan("A2")).enumerate(3).size(), 6u);
  EXPECT_EQ(WeylGroup(cartan_from_label("A1(1)")).enumerate(4).size(), 9u);
}

TEST(Enumerate, ResourceCapThrows) {
  EXPECT_THROW(WeylGroup(cartan_from_label("A2(1)")).enumerate(10, 20), ResourceLimit);
}

TEST(Poincare, A1AndA2) {
  EXPECT_EQ(finite_poincare(finite_cartan("A1")), (std::vector<int64_t>{1, 1}));
  EXPECT_EQ(finite_poincare(finite_cartan("A2")), (std::vector<int64_t>{1, 2, 2, 1}));
  EXPECT_EQ(finite_exponents(finite_cartan("A2")), (std::vector<int>{1, 2}));
}

TEST(PoincareProperty, OrderIsProductOfExponentsPlusOne) {
  for (const char* t : {"A3", "B3", "C3", "D4", "G2", "F4", "A1xA2"}) {
    auto a = finite_cartan(t);
    int64_t prod = 1;
    for (int e : finite_exponents(a)) prod *= e + 1;
    int64_t sum = 0;
    for (auto c : finite_poincare(a)) sum += c;
    EXPECT_EQ(sum, prod) << t;
  }
}

TEST(Rank2Polys, SmallK) {
  auto p0 = rank2_fg(0);
  EXPECT_EQ(p0.f_rec, (IntPoly{1}));
  auto p1 = rank2_fg(1);
  EXPECT_EQ(p1.f_rec, (IntPoly{-1, 1}));
  EXPECT_EQ(p1.g_rec, (IntPoly{1}));
  auto p2 = rank2_fg(2);
  EXPECT_EQ(p2.f_rec, (IntPoly{1, -3, 1}));
  EXPECT_EQ(p2.g_rec, (IntPoly{-2, 1}));
}

TEST(Rank2Polys, RecursionMatchesClosedForm) {
  for (int k = 0; k <= 30; ++k) {
    auto p = rank2_fg(k);
    EXPECT_EQ(p.f_rec, p.f_closed) << k;
    EXPECT_EQ(p.g_rec, p.g_closed) << k;
  }
}

TEST(Rank2PolysProperty, DescribeDihedralActionOnRoots) {
  for (auto [m, n] : std::vector<std::pair<int64_t, int64_t>>{{1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 2}, {1, 4},
                                                             {4, 1}, {2, 3}, {1, 0}, {0, 0}}) {
    Rank2Roots r{m, n};
    int64_t X = m * n;
    auto f = [&](int k) { return ev(rank2_fg(k).f_closed, X); };
    auto g = [&](int k) { return ev(rank2_fg(k).g_closed, X); };
    using P = std::pair<int64_t, int64_t>;
    const P a{1, 0}, b{0, 1};
    for (int k = 1; k <= 10; ++k) {
      EXPECT_EQ(r.act(power("ab", k), a), P(f(k), -n * g(k)));
      EXPECT_EQ(r.act("b" + power("ab", k), a), P(f(k), -n * g(k + 1)));
      EXPECT_EQ(r.act(power("ba", k), a), P(-f(k - 1), n * g(k)));
      EXPECT_EQ(r.act("a" + power("ba", k), a), P(-f(k), n * g(k)));
      EXPECT_EQ(r.act(power("ba", k), b), P(-m * g(k), f(k)));
      EXPECT_EQ(r.act("a" + power("ba", k), b), P(-m * g(k + 1), f(k)));
      EXPECT_EQ(r.act(power("ab", k), b), P(m * g(k), -f(k - 1)));
      EXPECT_EQ(r.act("b" + power("ab", k), b), P(m * g(k), -f(k)));
    }
  }
}

TEST(WeylProperty, WordsMultiplyAndNormalize) {
  std::mt19937_64 rng(test::seed());
  for (const char* t : {"A2", "B2", "G2", "A3", "A1(1)", "A2(1)"}) {
    auto a = cartan_from_label(t);
    WeylGroup w(a);
    std::uniform_int_distribution<int> letter(0, a.size() - 1);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<int> u(trial % 7), v(trial % 5);
      for (auto& x : u) x = letter(rng);
      for (auto& x : v) x = letter(rng);
      std::vector<int> uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      auto x = w.from_word(uv);
      EXPECT_EQ(x, w.multiply(w.from_word(u), w.from_word(v))) << t;
      EXPECT_EQ(x.word(), normalize_word(a, uv)) << t;
      EXPECT_TRUE(w.multiply(x, w.inverse(x)).is_identity());
    }
  }
}

TEST(WeylProperty, ReducedWordsHaveDistinctPositiveInversions) {
  for (const char* t : {"A2", "B2", "G2", "A1(1)"}) {
    WeylGroup w(cartan_from_label(t));
    for (const auto& x : w.enumerate(6)) {
      auto b = w.inversion_coroots(x.word());
      std::set<Coweight> distinct(b.begin(), b.end());
      EXPECT_EQ(distinct.size(), b.size());
      for (const auto& y : b) EXPECT_TRUE(w.datum().is_positive(y)) << t << " " << y.str();
    }
  }
}

TEST(WeylProperty, DescentsMatchLengths) {
  WeylGroup w(cartan_from_label("A2(1)"));
  for (const auto& x : w.enumerate(4))
    for (int i = 0; i < 3; ++i) {
      int l = w.multiply(x, w.from_word({i})).length();
      EXPECT_EQ(w.is_right_descent(x, i), l == x.length() - 1);
    }
}
