#include <gtest/gtest.h>

#include <random>

#include "kmw/toruscover.hpp"
#include "test_support.hpp"

using namespace kmw;

namespace {

TorusCover make_cover(const char* type, int64_t q, int n) {
  auto d = RootDatum::simply_connected(finite_cartan(type));
  return TorusCover(d, QuadraticForm::standard(d), LocalField(q, n));
}

}  // namespace

TEST(TorusCover, GeneratorSquareCarriesSymbolPower) {
  TorusCover h = make_cover("A1", 5, 2);
  const LocalField& f = h.field();
  auto s = f.make(1, 2), t = f.make(0, 3);
  auto lhs = h.mul(h.generator(0, s), h.generator(0, t));
  int sym = f.hilbert(s, t) * static_cast<int>(h.form().q(0));
  auto rhs = h.mul(h.central(sym % 2), h.generator(0, f.mul(s, t)));
  EXPECT_EQ(lhs, rhs) << h.str(lhs) << " vs " << h.str(rhs);
}

TEST(TorusCover, VerifyReportsPassForRank2) {
  for (const char* t : {"A2", "B2", "G2"})
    for (auto [q, n] : std::vector<std::pair<int64_t, int>>{{13, 2}, {13, 3}, {7, 3}}) {
      auto r = verify_torus_cover(finite_cartan(t), q, n, test::seed(), 8);
      EXPECT_TRUE(r.ok()) << t << " q=" << q << " n=" << n;
      for (const auto& c : r.checks)
        if (!c.ok()) ADD_FAILURE() << c.name << ": " << c.counterexamples.front();
    }
}

TEST(TorusCover, RejectsUnsupportedField) { EXPECT_THROW(verify_torus_cover(finite_cartan("A2"), 7, 2), InvalidInput); }

TEST(TorusCoverProperty, GroupAxioms) {
  TorusCover h = make_cover("B2", 13, 2);
  std::mt19937_64 rng(test::seed());
  for (int t = 0; t < 40; ++t) {
    auto x = h.random_element(rng, 2), y = h.random_element(rng, 2), z = h.random_element(rng, 2);
    EXPECT_EQ(h.mul(h.mul(x, y), z), h.mul(x, h.mul(y, z)));
    EXPECT_EQ(h.mul(x, h.inv(x)), h.identity());
    EXPECT_EQ(h.mul(h.identity(), x), x);
  }
}

TEST(TorusCoverProperty, CommutatorIsCentralAndBilinear) {
  TorusCover h = make_cover("A2", 13, 3);
  const LocalField& f = h.field();
  std::mt19937_64 rng(test::seed() + 1);
  std::uniform_int_distribution<int64_t> unit(1, 12), val(-2, 2);
  for (int t = 0; t < 30; ++t) {
    auto s = f.make(val(rng), unit(rng)), u = f.make(val(rng), unit(rng));
    auto c = h.commutator(h.generator(0, s), h.generator(1, u));
    int64_t b = h.form().bilinear(h.datum().coroot(0), h.datum().coroot(1));
    int expect = static_cast<int>(((f.hilbert(s, u) * b) % 3 + 3) % 3);
    EXPECT_EQ(c, h.central(expect));
  }
}

TEST(TorusCoverProperty, SAutomorphismsAreInvolutiveUpToInverse) {
  TorusCover h = make_cover("B2", 13, 2);
  std::mt19937_64 rng(test::seed() + 2);
  for (int t = 0; t < 20; ++t) {
    auto x = h.random_element(rng, 2);
    for (int i = 0; i < 2; ++i) EXPECT_EQ(h.s_auto(i, h.s_auto(i, x, false), true), x);
  }
}
