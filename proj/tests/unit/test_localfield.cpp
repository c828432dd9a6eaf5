#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "kmw/localfield.hpp"
#include "test_support.hpp"

using namespace kmw;

namespace {

int64_t powmod(int64_t b, int64_t e, int64_t p) {
  int64_t r = 1;
  b %= p;
  for (; e > 0; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

// Tame symbol over a prime field: [(-1)^{ab} y_0^a / x_0^b]^{(p-1)/n} as a power of
// zeta = g^{(p-1)/n}, found by search.
int tame_symbol(int64_t p, int n, int64_t g, int64_t a, int64_t xu, int64_t b, int64_t yu) {
  auto pw = [&](int64_t u, int64_t e) {
    int64_t m = ((e % (p - 1)) + (p - 1)) % (p - 1);
    return powmod(u, m, p);
  };
  int64_t c = pw(yu, a) * pw(xu, -b) % p;
  if ((a * b) % 2 != 0) c = (p - c) % p;
  int64_t val = powmod(c, (p - 1) / n, p);
  int64_t zeta = powmod(g, (p - 1) / n, p);
  int64_t z = 1;
  for (int e = 0; e < n; ++e, z = z * zeta % p)
    if (z == val) return e;
  return -1;
}

// g_k = sum_{x != 0} chi(x)^k psi(-x) with chi(g^e) = exp(2 pi i e / n), psi(x) = exp(2 pi i x / p).
std::complex<double> gauss_brute(int64_t p, int n, int64_t g, int k) {
  std::complex<double> s = 0;
  int64_t x = 1;
  for (int64_t e = 0; e < p - 1; ++e, x = x * g % p)
    s += std::polar(1.0, 2 * M_PI * static_cast<double>(k * e) / n) *
         std::polar(1.0, -2 * M_PI * static_cast<double>(x) / static_cast<double>(p));
  return s;
}

}  // namespace

TEST(Hilbert, UniformizerWithItself) {
  LocalField f(5, 2);
  EXPECT_EQ(f.hilbert(f.uniformizer(), f.uniformizer()), 0);
}

TEST(Hilbert, UniformizerWithUnitTwo) {
  LocalField f(5, 2);
  EXPECT_EQ(f.hilbert(f.uniformizer(), f.make(0, 2)), 1);
}

TEST(Hilbert, UnitsAreUnramified) {
  LocalField f(13, 3);
  for (int64_t u = 1; u < 13; ++u)
    for (int64_t w = 1; w < 13; ++w) EXPECT_EQ(f.hilbert(f.make(0, u), f.make(0, w)), 0);
}

TEST(HilbertProperty, MatchesTameSymbolOnPrimeFields) {
  for (auto [p, n] : std::vector<std::pair<int64_t, int>>{{5, 2}, {13, 2}, {13, 3}, {7, 3}, {17, 4}}) {
    LocalField f(p, n);
    int64_t g = f.residue_field().primitive();
    for (int64_t a = -2; a <= 2; ++a)
      for (int64_t b = -2; b <= 2; ++b)
        for (int64_t xu = 1; xu < p; ++xu)
          for (int64_t yu = 1; yu < p; yu += 2)
            EXPECT_EQ(f.hilbert(f.make(a, xu), f.make(b, yu)), tame_symbol(p, n, g, a, xu, b, yu))
                << "p=" << p << " n=" << n;
  }
}

TEST(HilbertProperty, SteinbergIdentities) {
  for (auto [q, n] : std::vector<std::pair<int64_t, int>>{{5, 2}, {13, 2}, {13, 3}, {7, 3}, {9, 2}}) {
    auto r = steinberg_check(LocalField(q, n), 1);
    EXPECT_TRUE(r.ok()) << "q=" << q << " n=" << n << " " << (r.violations.empty() ? "" : r.violations[0]);
    EXPECT_GT(r.checked, 0);
  }
}

TEST(HilbertProperty, OneIsTrivialAndSkewSymmetry) {
  LocalField f(13, 3);
  for (int64_t v = -2; v <= 2; ++v)
    for (int64_t u = 1; u < 13; ++u) {
      auto x = f.make(v, u);
      EXPECT_EQ(f.hilbert(f.one(), x), 0);
      EXPECT_EQ(f.hilbert(x, f.one()), 0);
      for (int64_t w = 1; w < 13; w += 3) {
        auto y = f.make(1 - v, w);
        EXPECT_EQ((f.hilbert(x, y) + f.hilbert(y, x)) % 3, 0);
      }
      EXPECT_EQ((2 * f.hilbert(x, x)) % 3, 0);
    }
}

TEST(Gauss, RelationsHold) {
  for (auto [q, n] : std::vector<std::pair<int64_t, int>>{{5, 2}, {13, 2}, {13, 3}, {7, 3}, {9, 4}, {25, 3}}) {
    GaussTable t(q, n);
    EXPECT_TRUE(t.check_relations().empty()) << "q=" << q << " n=" << n;
    EXPECT_EQ(t.g(0), t.field().from_rational(-1));
  }
}

TEST(GaussProperty, MatchesBruteForceComplexSum) {
  for (auto [p, n] : std::vector<std::pair<int64_t, int>>{{5, 2}, {13, 2}, {13, 3}, {7, 3}, {13, 6}}) {
    GaussTable t(p, n);
    int64_t g = FiniteField(p).primitive();
    for (int k = 0; k < n; ++k) {
      auto want = gauss_brute(p, n, g, k);
      auto got = t.g_complex(k);
      EXPECT_NEAR(got.real(), want.real(), 1e-9) << "p=" << p << " n=" << n << " k=" << k;
      EXPECT_NEAR(got.imag(), want.imag(), 1e-9) << "p=" << p << " n=" << n << " k=" << k;
      if (k != 0) { EXPECT_NEAR(std::abs(got), std::sqrt(static_cast<double>(p)), 1e-9); }
    }
  }
}

TEST(Field, AssumptionEnforced) {
  EXPECT_THROW(check_field_assumption(7, 2), InvalidInput);
  EXPECT_THROW(check_field_assumption(15, 1), InvalidInput);
  EXPECT_NO_THROW(check_field_assumption(13, 3));
}

TEST(FieldProperty, FiniteFieldAxioms) {
  for (int64_t q : {5, 9, 13, 25, 27}) {
    FiniteField k(q);
    for (int64_t a = 0; a < q; ++a) {
      EXPECT_EQ(k.add(a, k.neg(a)), 0);
      if (a != 0) { EXPECT_EQ(k.mul(a, k.inv(a)), 1); }
      for (int64_t b = 0; b < q; b += 2) {
        EXPECT_EQ(k.mul(a, b), k.mul(b, a));
        EXPECT_EQ(k.mul(a, k.add(b, 1)), k.add(k.mul(a, b), a));
      }
    }
    EXPECT_EQ(k.pow(k.primitive(), q - 1), 1);
    for (int64_t d = 1; d < q - 1; ++d)
      if ((q - 1) % d == 0) { EXPECT_NE(k.pow(k.primitive(), d), 1) << q; }
  }
}
