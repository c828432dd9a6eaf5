#include <gtest/gtest.h>

#include "kmw/whittaker.hpp"
#include "test_support.hpp"

using namespace kmw;
using test::Line;

namespace {

// (1 - e^{-n}) W(e^k) for the rank-one cover of degree n with Q = 1, written
// directly from the star action: v^k [(1 - v e^{-n}) e^k - e^{-n} N(k)] with
// N(k) = e^{-k}[(1 - v) e^{2k mod n} - v g_{1 + 2k} e^{n-1}(1 - e^{-n})].
Line rank1_cleared(int n, int64_t k) {
  Coeff one = Coeff::scalar(1, n), v = Coeff::v_power(1, n);
  Coeff g = Coeff::gauss(1 + 2 * k, n);
  int64_t r = (2 * k) % n;
  Line out;
  test::add_to(out, k, one);
  test::add_to(out, k - n, -v);
  test::add_to(out, -k + r - n, -(one - v));
  test::add_to(out, -k + n - 1 - n, v * g);
  test::add_to(out, -k - 1 - n, -(v * g));
  Line pre;
  test::add_to(pre, 0, Coeff::v_power(static_cast<int>(k), n));
  return test::mul(pre, out);
}

// Classical value v^{<lambda, rho>} prod_{a > 0}(1 - v e^{-a}) chi_lambda for A2 at lambda = rho^vee.
LatticeSeries a2_adjoint(const StarContext& ctx) {
  auto e = [&](int x, int y, int c = 1) { return ctx.monomial(Coweight::of({x, y}), Coeff::scalar(c)); };
  LatticeSeries chi = e(1, 1) + e(1, 0) + e(0, 1) + e(0, 0, 2) + e(-1, 0) + e(0, -1) + e(-1, -1);
  LatticeSeries out = chi;
  for (auto a : {Coweight::of({1, 0}), Coweight::of({0, 1}), Coweight::of({1, 1})})
    out = out * (e(0, 0) - ctx.monomial(-a, Coeff::v_power(1)));
  return out.scaled(Coeff::v_power(2));
}

}  // namespace

TEST(Whittaker, RankOneCoverMatchesStarFormula) {
  for (int n = 1; n <= 4; ++n) {
    WhittakerEvaluator ev(MetaplecticDatum::plain(finite_cartan("A1"), n));
    for (int64_t k = 0; k <= 4; ++k) {
      WhittakerValue w = ev.simple_route(Coweight::of({k}), WhittakerOptions{});
      ASSERT_TRUE(w.exact);
      Line den;
      test::add_to(den, 0, Coeff::scalar(1, n));
      test::add_to(den, -n, -Coeff::scalar(1, n));
      EXPECT_EQ(test::str(test::mul(den, test::from_series(w.formal))), test::str(rank1_cleared(n, k)))
          << "n=" << n << " k=" << k;
    }
  }
}

TEST(Whittaker, A1ClassicalCharacterFormula) {
  WhittakerEvaluator ev(MetaplecticDatum::plain(finite_cartan("A1"), 1));
  WhittakerValue w = ev.hecke_route(Coweight::of({1}), WhittakerOptions{});
  Coeff v = Coeff::v_power(1), v2 = Coeff::v_power(2);
  Line want;
  test::add_to(want, 1, v);
  test::add_to(want, 0, v - v2);
  test::add_to(want, -1, v - v2);
  test::add_to(want, -2, -v2);
  EXPECT_EQ(test::str(test::from_series(w.formal)), test::str(want));
}

TEST(Whittaker, A2AdjointMatchesCharacterFormula) {
  WhittakerEvaluator ev(MetaplecticDatum::plain(finite_cartan("A2"), 1));
  Coweight rho = Coweight::of({1, 1});
  WhittakerOptions opt;
  opt.q = 13;
  auto r = ev.crosscheck(rho, opt);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(LatticeSeries::agree(r.hecke.formal, a2_adjoint(ev.context()))) << r.hecke.formal.str();
}

TEST(Whittaker, NonDominantRejected) {
  WhittakerEvaluator ev(MetaplecticDatum::plain(finite_cartan("A2"), 1));
  EXPECT_THROW(ev.simple_route(Coweight::of({1, -1}), WhittakerOptions{}), InvalidInput);
}

TEST(WhittakerProperty, RoutesAgreeFormallyAndAtQ) {
  for (auto [label, n, lams] : std::vector<std::tuple<const char*, int, std::vector<std::vector<int64_t>>>>{
           {"A1", 2, {{0}, {1}, {2}, {4}}}, {"A1", 3, {{0}, {3}}}, {"A2", 2, {{0, 0}, {1, 1}}}, {"B2", 2, {{1, 1}}}}) {
    WhittakerEvaluator ev(MetaplecticDatum::plain(finite_cartan(label), n));
    WhittakerOptions opt;
    opt.q = 13;
    for (const auto& l : lams) {
      auto r = ev.crosscheck(Coweight::from_vector(l), opt);
      EXPECT_TRUE(r.ok()) << label << " n=" << n << " " << describe(r.formal_mismatches);
      EXPECT_TRUE(polynomial_in_v_and_gauss(r.hecke.formal));
      EXPECT_TRUE(support_below(r.hecke.formal, Coweight::from_vector(l)));
    }
  }
}

TEST(WhittakerProperty, IwahoriPiecesSumToHeckeRoute) {
  WhittakerEvaluator ev(MetaplecticDatum::plain(finite_cartan("A1"), 2));
  Coweight lam = Coweight::of({2});
  WhittakerOptions opt;
  auto pieces = ev.iwahori_pieces(lam, Flavor::Whittaker, opt);
  EXPECT_EQ(pieces.size(), 2u);
  LatticeSeries total(1, 1, 2);
  for (const auto& p : pieces) total += p.value.polynomial();
  EXPECT_TRUE(LatticeSeries::agree(total, ev.hecke_route(lam, opt).formal));
}

TEST(WhittakerProperty, AffineCoverStabilizesAndAgrees) {
  WhittakerEvaluator ev(MetaplecticDatum::plain(cartan_from_label("A1(1)"), 2));
  WhittakerOptions opt;
  opt.depth = 3;
  opt.cap = 12;
  opt.q = 13;
  auto r = ev.crosscheck(Coweight::of({0, 0, 1}), opt);
  EXPECT_TRUE(r.ok()) << describe(r.formal_mismatches);
  EXPECT_TRUE(r.hecke.stabilized);
}
