#include "kmw/verify.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <map>
#include <set>
#include <sstream>

#include "kmw/cg.hpp"
#include "kmw/dl.hpp"
#include "kmw/localfield.hpp"
#include "kmw/parallel.hpp"
#include "kmw/root_datum.hpp"
#include "kmw/symmetrizer.hpp"
#include "kmw/toruscover.hpp"
#include "kmw/weyl.hpp"
#include "kmw/whittaker.hpp"

namespace kmw {

namespace {

std::string join_word(const std::vector<int>& w) {
  std::string s = "[";
  for (size_t k = 0; k < w.size(); ++k) s += (k ? "," : "") + std::to_string(w[k]);
  return s + "]";
}

std::vector<int> alternating(int first, int second, int length) {
  std::vector<int> w;
  for (int k = 0; k < length; ++k) w.push_back(k % 2 == 0 ? first : second);
  return w;
}

// Collects failures with a cap on the number of stored messages.
class Failures {
 public:
  void add(const std::string& s) {
    ++count_;
    if (messages_.size() < 5) messages_.push_back(s);
  }
  void merge(const Failures& o) {
    count_ += o.count_;
    for (const auto& m : o.messages_)
      if (messages_.size() < 5) messages_.push_back(m);
  }
  bool empty() const { return count_ == 0; }
  CheckOutcome outcome(const std::string& summary) const {
    CheckOutcome r;
    r.pass = empty();
    r.detail = summary;
    if (!empty()) {
      r.detail += "; " + std::to_string(count_) + " failure(s)";
      for (const auto& m : messages_) r.detail += "; " + m;
    }
    return r;
  }

 private:
  int64_t count_ = 0;
  std::vector<std::string> messages_;
};

const std::vector<std::string>& rank2_finite_labels() {
  static const std::vector<std::string> labels{"A1xA1", "A2", "B2", "G2"};
  return labels;
}

// The 20 monomial exponents of the CG and DL grid.
std::vector<Coweight> monomial_grid() {
  std::vector<Coweight> out;
  for (int x = -2; x <= 2; ++x)
    for (int y = -1; y <= 2; ++y) out.push_back(Coweight::of({x, y}));
  return out;
}

// Polynomial values are logged with the dominance bound when lambda is dominant.
void log_localized(InvariantLog& log, const std::string& where, const Localized& f, const RootDatum& d,
                   const Coweight& lambda) {
  if (!f.is_polynomial()) {
    log.fail(where + ": value is not a polynomial");
    return;
  }
  std::optional<Coweight> bound;
  if (d.is_dominant(lambda)) bound = lambda;
  log.series(where, f.numerator(), bound);
}

std::vector<Coweight> first_dominant(const RootDatum& d, size_t count) {
  std::vector<Coweight> out{d.zero()};
  for (int x = 0; x <= 4 && out.size() < count; ++x)
    for (int y = 0; y <= 4 && out.size() < count; ++y) {
      if (d.rank() == 1 && y > 0) continue;
      Coweight l = d.zero();
      l[0] = x;
      if (d.rank() > 1) l[1] = y;
      if (!l.is_zero() && d.is_dominant(l)) out.push_back(l);
    }
  return out;
}

}  // namespace

void InvariantLog::series(const std::string& where, const LatticeSeries& s, const std::optional<Coweight>& bound) {
  ++values_;
  if (!v_polynomial(s)) {
    fail(where + ": negative power of v in a coefficient");
    return;
  }
  for (const auto& [mu, c] : s.terms())
    for (const auto& [key, r] : c.terms())
      for (int k : key.gauss_indices())
        if (k < 0 || k >= c.n()) {
          fail(where + ": Gauss index out of range at e" + mu.str());
          return;
        }
  if (bound)
    for (const auto& [mu, c] : s.terms())
      if (!s.leq(mu, *bound)) {
        fail(where + ": support at e" + mu.str() + " is not below " + bound->str());
        return;
      }
}

void InvariantLog::fail(const std::string& what) { violations_.push_back(what); }

void InvariantLog::merge(const InvariantLog& o) {
  values_ += o.values_;
  violations_.insert(violations_.end(), o.violations_.begin(), o.violations_.end());
}

std::vector<TypeTableRow> compute_type_table(int max_n) {
  std::vector<TypeTableRow> out;
  for (const auto& fam : affine_families())
    for (const auto& t : fam.smallest(2)) {
      TypeTableRow row;
      row.family = fam.id;
      row.ell = t.ell();
      RootDatum d = RootDatum::simply_connected(t.cartan());
      QuadraticForm q = QuadraticForm::standard(d);
      row.form = q.values();
      for (int n = 1; n <= max_n; ++n) row.types[n] = classify(MetaplecticDatum(d, q, n).tilde_cartan()).label();
      out.push_back(std::move(row));
    }
  return out;
}

CheckOutcome check_type_table(const std::vector<TypeTableRow>& golden) {
  Failures f;
  if (golden.empty()) return {false, "golden table missing"};
  std::vector<TypeTableRow> computed = compute_type_table(12);
  std::set<std::string> families;
  size_t cells = 0;
  for (const auto& g : golden) {
    families.insert(g.family);
    auto it = std::find_if(computed.begin(), computed.end(),
                           [&](const TypeTableRow& c) { return c.family == g.family && c.ell == g.ell; });
    if (it == computed.end()) {
      f.add("no computed row for " + g.family + " rank " + std::to_string(g.ell));
      continue;
    }
    if (it->form != g.form) f.add(g.family + " rank " + std::to_string(g.ell) + ": form differs");
    for (const auto& [n, label] : g.types) {
      ++cells;
      auto c = it->types.find(n);
      if (c == it->types.end() || c->second != label)
        f.add(g.family + " rank " + std::to_string(g.ell) + " n=" + std::to_string(n) + ": computed " +
              (c == it->types.end() ? std::string("nothing") : c->second) + ", golden " + label);
    }
  }
  if (golden.size() != computed.size())
    f.add("golden has " + std::to_string(golden.size()) + " rows, computed " + std::to_string(computed.size()));
  if (families.size() != 16) f.add("golden covers " + std::to_string(families.size()) + " families");
  return f.outcome(std::to_string(families.size()) + " families, " + std::to_string(golden.size()) + " rows, " +
                   std::to_string(cells) + " cells");
}

CheckOutcome check_rank2_apparatus(int max_k, int max_len_infinite) {
  Failures f;
  int64_t checks = 0;
  // Recursion against the closed forms.
  for (int k = 0; k <= max_k; ++k) {
    Rank2Polys p = rank2_fg(k);
    ++checks;
    if (p.f_rec != p.f_closed) f.add("f_" + std::to_string(k) + " recursion differs from the closed form");
    if (p.g_rec != p.g_closed) f.add("g_" + std::to_string(k) + " recursion differs from the closed form");
  }
  // Closed formulas for alternating products acting on the simple roots a, b,
  // with m = <b, a^vee> and n = <a, b^vee>. The roots of A are the coroots of
  // its transpose, which WeylGroup acts on in Y coordinates.
  std::vector<std::pair<int, int>> pairs;
  for (int m = 0; m >= -6; --m)
    for (int n = 0; n >= -6; --n) {
      int z = m * n;
      if ((m == 0) != (n == 0)) continue;
      if (z == 0 || z == 1 || z == 2 || z == 3 || z == 4 || z == 6) pairs.emplace_back(m, n);
    }
  for (auto [m, n] : pairs) {
    CartanMatrix a = CartanMatrix::from_rows({{2, m}, {n, 2}});
    WeylGroup w(a.transpose());
    const int dim = w.datum().dim();
    auto coords = [&](const std::vector<int>& word, int root) {
      Coweight y = w.from_word(word).act(Coweight::unit(dim, root));
      return std::pair<int64_t, int64_t>{y[0], y[1]};
    };
    int z = m * n;
    std::vector<Rational> fv, gv;
    for (int k = 0; k <= 11; ++k) {
      Rank2Polys p = rank2_fg(k);
      fv.push_back(eval_poly(p.f_rec, Rational(z)));
      gv.push_back(eval_poly(p.g_rec, Rational(z)));
    }
    auto I = [](const Rational& r) { return r.to_int64(); };
    for (int k = 0; k <= 10; ++k) {
      std::vector<int> ab, ba, bab, aba;
      for (int t = 0; t < k; ++t) {
        ab.insert(ab.end(), {0, 1});
        ba.insert(ba.end(), {1, 0});
      }
      bab.push_back(1);
      bab.insert(bab.end(), ab.begin(), ab.end());
      aba.push_back(0);
      aba.insert(aba.end(), ba.begin(), ba.end());
      struct Expect {
        const char* name;
        const std::vector<int>* word;
        int root;
        bool needs_k;
        int64_t ca, cb;
      };
      int64_t fk = I(fv[k]), gk = I(gv[k]), gk1 = I(gv[k + 1]);
      int64_t fkm = k > 0 ? I(fv[k - 1]) : 0;
      std::vector<Expect> ex{
          {"(s_a s_b)^k a", &ab, 0, false, fk, -n * gk},
          {"s_b (s_a s_b)^k a", &bab, 0, false, fk, -n * gk1},
          {"(s_b s_a)^k a", &ba, 0, true, -fkm, n * gk},
          {"s_a (s_b s_a)^k a", &aba, 0, false, -fk, n * gk},
          {"(s_b s_a)^k b", &ba, 1, false, -m * gk, fk},
          {"s_a (s_b s_a)^k b", &aba, 1, false, -m * gk1, fk},
          {"(s_a s_b)^k b", &ab, 1, true, m * gk, -fkm},
          {"s_b (s_a s_b)^k b", &bab, 1, false, m * gk, -fk},
      };
      for (const auto& e : ex) {
        if (e.needs_k && k == 0) continue;
        ++checks;
        auto got = coords(*e.word, e.root);
        if (got.first != e.ca || got.second != e.cb)
          f.add(std::string(e.name) + " with m=" + std::to_string(m) + " n=" + std::to_string(n) +
                " k=" + std::to_string(k) + " gives (" + std::to_string(got.first) + "," +
                std::to_string(got.second) + ")");
      }
    }
    // Elements fixing a simple root and elements carrying one simple root to
    // the other, found by exhaustive search.
    bool finite = z <= 3;
    std::vector<WeylElement> els = w.enumerate(finite ? 1000 : max_len_infinite);
    for (int r = 0; r < 2; ++r) {
      int other = 1 - r;
      Coweight ar = Coweight::unit(dim, r), ao = Coweight::unit(dim, other);
      std::vector<std::vector<int>> fixing, moving;
      for (const auto& e : els) {
        if (!e.is_identity() && e.act(ar) == ar) fixing.push_back(e.word());
        if (e.act(ar) == ao) moving.push_back(e.word());
      }
      std::vector<std::vector<int>> want_fix, want_move;
      auto canon = [&](const std::vector<int>& word) { return w.from_word(word).word(); };
      if (z == 0) want_fix.push_back(canon({other}));
      if (z == 2) want_fix.push_back(canon({other, r, other}));
      if (z == 3) {
        std::vector<int> w1{other, r, other, r, other};
        std::vector<int> w2{r, other, r, other, r, other, r};
        if (canon(w1) != canon(w2)) f.add("the two stabilizer words differ for z=3");
        want_fix.push_back(canon(w1));
      }
      if (z == 1) {
        std::vector<int> w1{r, other};
        std::vector<int> w2{other, r, other, r};
        if (canon(w1) != canon(w2)) f.add("the two transporting words differ for z=1");
        want_move.push_back(canon(w1));
      }
      ++checks;
      if (fixing != want_fix)
        f.add("stabilizer of a simple root for m=" + std::to_string(m) + " n=" + std::to_string(n) + " has " +
              std::to_string(fixing.size()) + " nontrivial element(s)" +
              (fixing.empty() ? "" : ", first " + join_word(fixing.front())));
      if (moving != want_move)
        f.add("elements carrying one simple root to the other for m=" + std::to_string(m) +
              " n=" + std::to_string(n) + ": " + std::to_string(moving.size()));
    }
  }
  return f.outcome(std::to_string(checks) + " checks over " + std::to_string(pairs.size()) + " (m,n) pairs");
}

CheckOutcome check_inversion_sets(int max_len) {
  Failures f;
  int64_t words = 0;
  for (std::string label : {"A2", "B2", "G2", "A1(1)"}) {
    WeylGroup w(cartan_from_label(label));
    std::vector<int> word;
    // All words of length <= max_len over two letters.
    for (int len = 0; len <= max_len; ++len)
      for (int bits = 0; bits < (1 << len); ++bits) {
        word.clear();
        for (int t = 0; t < len; ++t) word.push_back((bits >> t) & 1);
        ++words;
        auto betas = w.inversion_roots(word);
        WeylElement e = w.from_word(word);
        auto reduced = w.inversion_roots(e.word());
        std::map<std::vector<int64_t>, int> rest;
        for (const auto& b : betas) ++rest[b];
        bool ok = true;
        for (const auto& b : reduced)
          if (--rest[b] < 0) ok = false;
        for (const auto& [b, c] : rest) {
          std::vector<int64_t> neg(b.size());
          for (size_t k = 0; k < b.size(); ++k) neg[k] = -b[k];
          auto it = rest.find(neg);
          if (c != (it == rest.end() ? 0 : it->second)) ok = false;
        }
        if (!ok) f.add(label + " word " + join_word(word));
      }
  }
  return f.outcome(std::to_string(words) + " words");
}

CheckOutcome check_cg_action(InvariantLog& log, bool) {
  struct Case {
    std::string label;
    int n;
  };
  std::vector<Case> cases;
  for (const auto& l : rank2_finite_labels())
    for (int n : {1, 2, 3}) cases.push_back({l, n});
  std::vector<Failures> fails(cases.size());
  std::vector<InvariantLog> logs(cases.size());
  auto grid = monomial_grid();
  parallel_for(cases.size(), [&](size_t c) {
    StarContext ctx(MetaplecticDatum::plain(finite_cartan(cases[c].label), cases[c].n));
    std::string tag = cases[c].label + " n=" + std::to_string(cases[c].n);
    int h = ctx.datum().cartan().braid_order(0, 1);
    auto w1 = alternating(0, 1, h), w2 = alternating(1, 0, h);
    for (const auto& lam : grid) {
      Localized f(ctx.monomial(lam));
      if (!Localized::equal(ctx.star_word(w1, f), ctx.star_word(w2, f)))
        fails[c].add(tag + " braid relation at e" + lam.str());
      for (int i = 0; i < 2; ++i) {
        if (!Localized::equal(ctx.star_word({i, i}, f), f))
          fails[c].add(tag + " s_" + std::to_string(i) + " is not an involution at e" + lam.str());
        // Support of e^{-a~} s_a * e^lambda lies below lambda when <lambda, a> >= -1.
        Localized s = ctx.star_simple(i, f).shifted(-ctx.met().tilde_coroot(i));
        int64_t floor = ctx.datum().height(lam) - 12;
        std::optional<Coweight> bound;
        if (ctx.datum().pairing(lam, i) >= -1) bound = lam;
        logs[c].series(tag + " e^{-a~} s_" + std::to_string(i) + " * e" + lam.str(), s.expand(floor), bound);
      }
    }
  });
  Failures all;
  for (size_t c = 0; c < cases.size(); ++c) {
    all.merge(fails[c]);
    log.merge(logs[c]);
  }
  return all.outcome(std::to_string(cases.size()) + " data x " + std::to_string(grid.size()) + " monomials");
}

CheckOutcome check_dl_braid(InvariantLog& log, bool) {
  struct Case {
    std::string label;
    int n;
    Flavor flavor;
  };
  std::vector<Case> cases;
  for (const auto& l : rank2_finite_labels())
    for (int n : {1, 2, 3})
      for (Flavor fl : {Flavor::Spherical, Flavor::Whittaker}) cases.push_back({l, n, fl});
  std::vector<Failures> fails(cases.size());
  std::vector<InvariantLog> logs(cases.size());
  auto grid = monomial_grid();
  parallel_for(cases.size(), [&](size_t c) {
    StarContext ctx(MetaplecticDatum::plain(finite_cartan(cases[c].label), cases[c].n));
    DLOperator op(ctx, cases[c].flavor, true);
    std::string tag = cases[c].label + " n=" + std::to_string(cases[c].n) + " " + to_string(cases[c].flavor);
    int h = ctx.datum().cartan().braid_order(0, 1);
    auto w1 = alternating(0, 1, h), w2 = alternating(1, 0, h);
    // The spherical operators leave a denominator for n >= 2; polynomiality is
    // asserted for the Whittaker flavor and for n = 1.
    bool polynomial = cases[c].flavor == Flavor::Whittaker || cases[c].n == 1;
    for (const auto& lam : grid) {
      Localized f(ctx.monomial(lam));
      Localized a = op.apply_word(w1, f), b = op.apply_word(w2, f);
      if (!Localized::equal(a, b)) fails[c].add(tag + " braid relation at e" + lam.str());
      if (polynomial) log_localized(logs[c], tag + " T_w0 e" + lam.str(), a, ctx.datum(), lam);
    }
  });
  Failures all;
  for (size_t c = 0; c < cases.size(); ++c) {
    all.merge(fails[c]);
    log.merge(logs[c]);
  }
  return all.outcome(std::to_string(cases.size()) + " (datum, n, flavor) x " + std::to_string(grid.size()) +
                     " monomials");
}

CheckOutcome check_degeneration(InvariantLog& log, bool) {
  Failures f;
  auto grid = monomial_grid();
  int64_t checks = 0;
  for (const auto& label : rank2_finite_labels()) {
    StarContext ctx(MetaplecticDatum::plain(finite_cartan(label), 1));
    int h = ctx.datum().cartan().braid_order(0, 1);
    auto w1 = alternating(0, 1, h);
    for (const auto& lam : grid) {
      Localized e(ctx.monomial(lam));
      for (int i = 0; i < 2; ++i) {
        ++checks;
        if (!Localized::equal(ctx.star_simple(i, e), ctx.reflect(i, e)))
          f.add(label + " s_" + std::to_string(i) + " * e" + lam.str() + " differs from the reflection");
      }
      for (Flavor fl : {Flavor::Spherical, Flavor::Whittaker}) {
        DLOperator met(ctx, fl, true), plain(ctx, fl, false);
        for (const auto& word : {std::vector<int>{0}, std::vector<int>{1}, w1}) {
          ++checks;
          Localized a = met.apply_word(word, e);
          if (!Localized::equal(a, plain.apply_word(word, e)))
            f.add(label + " " + to_string(fl) + " T~ differs from T on word " + join_word(word) + " at e" +
                  lam.str());
          log_localized(log, label + " n=1 " + to_string(fl) + " T" + join_word(word) + " e" + lam.str(), a,
                        ctx.datum(), lam);
        }
      }
    }
    // T_w(1) = v^{l(w)} for the spherical operators.
    Localized one(ctx.monomial(ctx.datum().zero()));
    for (bool metaplectic : {false, true}) {
      DLOperator op(ctx, Flavor::Spherical, metaplectic);
      for (const auto& w : ctx.weyl().enumerate(100)) {
        ++checks;
        Localized t = op.apply(w, one);
        Localized want(ctx.monomial(ctx.datum().zero(), Coeff::v_power(w.length(), 1)));
        if (!Localized::equal(t, want)) f.add(label + " T_w(1) != v^l(w) for w=" + join_word(w.word()));
      }
    }
  }
  return f.outcome(std::to_string(checks) + " identities");
}

CheckOutcome check_finite_cherednik(InvariantLog& log, bool) {
  struct Case {
    std::string label;
    int n;
  };
  std::vector<Case> cases{{"A1", 1}, {"A2", 1}, {"B2", 1}, {"A1", 2}, {"A2", 2}, {"A1", 3}, {"A2", 3}};
  std::vector<Failures> fails(cases.size());
  std::vector<InvariantLog> logs(cases.size());
  parallel_for(cases.size(), [&](size_t c) {
    StarContext ctx(MetaplecticDatum::plain(finite_cartan(cases[c].label), cases[c].n));
    Symmetrizer sym(ctx, true);
    std::string tag = cases[c].label + " n=" + std::to_string(cases[c].n);
    for (const auto& lam : first_dominant(ctx.datum(), 3))
      for (Flavor fl : {Flavor::Spherical, Flavor::Whittaker}) {
        SymmetrizerReport rep = sym.check_proportionality(fl, lam, 0, 0);
        if (!rep.ok()) fails[c].add(tag + " " + to_string(fl) + " at " + lam.str() + ": " + describe(rep.mismatches));
        if (fl == Flavor::Spherical && cases[c].n > 1) continue;
        Localized p = sym.hecke_exact(fl, lam);
        p.cancel();
        log_localized(logs[c], tag + " P " + to_string(fl) + " e" + lam.str(), p, ctx.datum(), lam);
      }
  });
  Failures all;
  for (size_t c = 0; c < cases.size(); ++c) {
    all.merge(fails[c]);
    log.merge(logs[c]);
  }
  return all.outcome(std::to_string(cases.size()) + " data x 3 coweights x 2 flavors");
}

CheckOutcome check_correction_routes(InvariantLog& log, bool quick) {
  Failures f;
  std::vector<std::string> labels{"A1(1)"};
  if (!quick) labels.push_back("A2(1)");
  const int64_t weight_cap = 24;  // v-degree 12
  for (const auto& label : labels) {
    StarContext ctx(MetaplecticDatum::plain(cartan_from_label(label), 1));
    Symmetrizer sym(ctx, false);
    int64_t floor = -4 * sym.depth_unit();
    LatticeSeries ct = sym.correction_factor(CorrectionMethod::MacdonaldCt, floor, weight_cap);
    LatticeSeries prod = sym.correction_factor(CorrectionMethod::ExponentProduct, floor, weight_cap);
    LatticeSeries vis = sym.correction_factor(CorrectionMethod::ViswanathDivision, floor, weight_cap);
    Coweight zero = ctx.datum().zero();
    log.series(label + " m by constant term", ct, zero);
    log.series(label + " m by product", prod, zero);
    log.series(label + " m by division", vis, zero);
    auto a = compare_series(ct, prod, floor), b = compare_series(ct, vis, floor);
    if (!a.empty()) f.add(label + " constant term vs product: " + describe(a));
    if (!b.empty()) f.add(label + " constant term vs division: " + describe(b));
    if (ct.size() < 2) f.add(label + " correction factor has no terms below e^0");
  }
  return f.outcome(std::to_string(labels.size()) + " affine data, depth 4, v-degree 12");
}

CheckOutcome check_metaplectic_affine(InvariantLog& log, bool quick) {
  Failures f;
  StarContext ctx(MetaplecticDatum::plain(cartan_from_label("A1(1)"), 2));
  Symmetrizer sym(ctx, true);
  const int64_t depth = 3;
  int64_t floor = -depth * sym.depth_unit();
  Coweight zero = ctx.datum().zero();
  std::vector<int> caps = quick ? std::vector<int>{9, 10} : std::vector<int>{11, 12};
  std::vector<LatticeSeries> values;
  for (int cap : caps) {
    SymmetrizerReport rep = sym.check_proportionality(Flavor::Whittaker, zero, depth, cap);
    if (!rep.ok())
      f.add("cap " + std::to_string(cap) + (rep.stabilized ? "" : " not stabilized") + " " + describe(rep.mismatches));
    StabilizedSeries p = sym.hecke_truncated(Flavor::Whittaker, zero, floor, cap);
    log.series("A1(1) n=2 Pflat(e^0) cap " + std::to_string(cap), p.value, zero);
    values.push_back(p.value);
  }
  auto d = compare_series(values[0], values[1], floor);
  if (!d.empty()) f.add("values differ between caps: " + describe(d));
  return f.outcome("A1(1) n=2 depth 3 at caps " + std::to_string(caps[0]) + " and " + std::to_string(caps[1]));
}

CheckOutcome check_identity_components(InvariantLog& log, bool) {
  Failures f;
  {
    StarContext ctx(MetaplecticDatum::plain(finite_cartan("A2"), 1));
    Symmetrizer sym(ctx, false);
    SymmetrizerReport rep = sym.check_identity_components(0, 0);
    if (!rep.ok()) f.add("A2: " + describe(rep.mismatches));
    Coweight zero = ctx.datum().zero();
    for (Flavor fl : {Flavor::Spherical, Flavor::Whittaker})
      log.series("A2 C_1 " + to_string(fl), sym.hecke_components_exact(fl).at({}).expand(-6), zero);
  }
  {
    StarContext ctx(MetaplecticDatum::plain(cartan_from_label("A1(1)"), 1));
    Symmetrizer sym(ctx, false);
    const int64_t depth = 3, weight_cap = 12;
    const int cap = 10;
    SymmetrizerReport rep = sym.check_identity_components(depth, cap, weight_cap);
    if (!rep.ok()) f.add(std::string("A1(1)") + (rep.stabilized ? "" : " not stabilized") + ": " + describe(rep.mismatches));
    int64_t floor = -depth * sym.depth_unit();
    Coweight zero = ctx.datum().zero();
    for (Flavor fl : {Flavor::Spherical, Flavor::Whittaker})
      log.series("A1(1) C_1 " + to_string(fl), sym.identity_component(fl, floor, cap, weight_cap).value, zero);
  }
  return f.outcome("A2 exact, A1(1) depth 3");
}

CheckOutcome check_local_field(bool quick) {
  Failures f;
  int64_t checked = 0;
  for (auto [q, n] : std::vector<std::pair<int64_t, int>>{{5, 2}, {13, 2}, {13, 3}, {7, 3}}) {
    std::string tag = "q=" + std::to_string(q) + " n=" + std::to_string(n);
    check_field_assumption(q, n);
    LocalField field(q, n);
    SteinbergReport rep = steinberg_check(field, quick ? 1 : 2);
    checked += rep.checked;
    for (const auto& v : rep.violations) f.add(tag + " " + v);
    GaussTable g(q, n);
    for (const auto& v : g.check_relations()) f.add(tag + " " + v);
  }
  return f.outcome(std::to_string(checked) + " symbol identities, Gauss relations for 4 fields");
}

CheckOutcome check_torus_cover(uint64_t seed, bool quick) {
  Failures f;
  int64_t checked = 0;
  for (const auto& label : rank2_finite_labels())
    for (auto [q, n] : std::vector<std::pair<int64_t, int>>{{5, 2}, {13, 2}, {13, 3}, {7, 3}}) {
      CoverReport rep = verify_torus_cover(finite_cartan(label), q, n, seed, quick ? 10 : 40);
      for (const auto& c : rep.checks) {
        checked += c.checked;
        for (const auto& e : c.counterexamples)
          f.add(label + " q=" + std::to_string(q) + " n=" + std::to_string(n) + " " + c.name + ": " + e);
      }
    }
  return f.outcome(std::to_string(checked) + " cover identities over 16 (type, field) pairs");
}

CheckOutcome check_whittaker(InvariantLog& log, bool) {
  Failures f;
  struct Case {
    std::string label;
    int n;
    std::vector<int64_t> lambda;
  };
  std::vector<Case> cases{{"A1", 2, {0}}, {"A1", 2, {2}}, {"A1", 2, {4}}, {"A2", 1, {1, 1}}};
  WhittakerOptions opt;
  opt.q = 13;
  for (const auto& c : cases) {
    WhittakerEvaluator ev(MetaplecticDatum::plain(finite_cartan(c.label), c.n));
    Coweight lam = Coweight::from_vector(c.lambda);
    WhittakerCrosscheck r = ev.crosscheck(lam, opt);
    std::string tag = c.label + " n=" + std::to_string(c.n) + " lambda=" + lam.str();
    if (!r.formal_mismatches.empty()) f.add(tag + " formal: " + describe(r.formal_mismatches));
    if (!r.specialized_mismatches.empty()) f.add(tag + " specialized: " + describe(r.specialized_mismatches));
    if (!r.hecke.specialized || !r.simple.specialized) f.add(tag + " missing specialization");
    for (const auto& s : r.invariant_failures) log.fail(tag + " " + s);
    log.series(tag + " simple route", r.simple.formal, lam);
    log.series(tag + " Hecke route", r.hecke.formal, lam);
  }
  return f.outcome(std::to_string(cases.size()) + " cases, formal and at q=13");
}

double criterion_limit(int id) {
  static const std::map<int, double> limits{{1, 5},   {2, 5},  {3, 30},   {4, 60},  {5, 60},
                                            {6, 60},  {7, 120}, {8, 120}, {9, 600}, {10, 120},
                                            {11, 10}, {12, 60}, {13, 300}, {14, 5}};
  auto it = limits.find(id);
  if (it == limits.end()) throw InvalidInput("unknown criterion " + std::to_string(id));
  return it->second;
}

std::string criterion_name(int id) {
  static const std::map<int, std::string> names{
      {1, "metaplectic type table"},
      {2, "rank-2 apparatus"},
      {3, "inversion sets of words"},
      {4, "CG action is a W-action"},
      {5, "DL braid relations"},
      {6, "n=1 degeneration"},
      {7, "finite strong Cherednik"},
      {8, "correction factor three routes"},
      {9, "metaplectic affine proportionality"},
      {10, "identity components agree"},
      {11, "local field symbols and Gauss sums"},
      {12, "torus cover"},
      {13, "Whittaker Hecke vs simple route"},
      {14, "support and polynomiality invariants"},
  };
  auto it = names.find(id);
  if (it == names.end()) throw InvalidInput("unknown criterion " + std::to_string(id));
  return it->second;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  auto selected = [&](int id) {
    return opt.only.empty() || std::find(opt.only.begin(), opt.only.end(), id) != opt.only.end();
  };
  bool need_log = selected(14);
  InvariantLog log;
  std::vector<CriterionResult> out;
  auto run_one = [&](int id) -> CheckOutcome {
    switch (id) {
      case 1: return check_type_table(opt.type_table);
      case 2: return check_rank2_apparatus();
      case 3: return check_inversion_sets(opt.quick ? 6 : 8);
      case 4: return check_cg_action(log, opt.quick);
      case 5: return check_dl_braid(log, opt.quick);
      case 6: return check_degeneration(log, opt.quick);
      case 7: return check_finite_cherednik(log, opt.quick);
      case 8: return check_correction_routes(log, opt.quick);
      case 9: return check_metaplectic_affine(log, opt.quick);
      case 10: return check_identity_components(log, opt.quick);
      case 11: return check_local_field(opt.quick);
      case 12: return check_torus_cover(opt.seed, opt.quick);
      case 13: return check_whittaker(log, opt.quick);
      case 14: {
        CheckOutcome r;
        r.pass = log.ok() && log.values() > 0;
        r.detail = std::to_string(log.values()) + " values, " + std::to_string(log.violations().size()) +
                   " violation(s)";
        for (size_t k = 0; k < log.violations().size() && k < 5; ++k) r.detail += "; " + log.violations()[k];
        return r;
      }
    }
    throw InvalidInput("unknown criterion " + std::to_string(id));
  };
  for (int id = 1; id <= 14; ++id) {
    bool report = selected(id);
    bool feeds_log = need_log && id >= 4 && id <= 13;
    if (!report && !feeds_log) continue;
    CriterionResult r;
    r.id = id;
    r.name = criterion_name(id);
    r.limit = criterion_limit(id);
    auto t0 = std::chrono::steady_clock::now();
    try {
      CheckOutcome o = run_one(id);
      r.pass = o.pass;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds > r.limit) {
      r.pass = false;
      r.detail += "; exceeded the time limit";
    }
    if (!report) continue;
    if (opt.on_result) opt.on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace kmw
