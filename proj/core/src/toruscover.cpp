#include "kmw/toruscover.hpp"

#include <algorithm>
#include <set>

#include "kmw/error.hpp"

namespace kmw {

namespace {

int mod_n(int64_t x, int n) { return static_cast<int>(((x % n) + n) % n); }

std::string local_str(const LocalElement& s) {
  std::string out = "pi^" + std::to_string(s.val) + "*(";
  for (size_t i = 0; i < s.coeffs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.coeffs[i]);
  }
  return out + ")";
}

}  // namespace

TorusCover::TorusCover(RootDatum datum, QuadraticForm form, LocalField field, int64_t valuation_window)
    : datum_(std::move(datum)), form_(std::move(form)), field_(std::move(field)), window_(valuation_window) {
  int d = dim();
  gram_.assign(d, std::vector<int64_t>(d, 0));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) gram_[a][b] = form_.bilinear(Coweight::unit(d, a), Coweight::unit(d, b));
}

LocalElement TorusCover::checked(LocalElement s) const {
  if (s.val > window_ || s.val < -window_)
    throw ResourceLimit("valuation leaves the window of " + std::to_string(window_), static_cast<long long>(s.val));
  return s;
}

int64_t TorusCover::root_pairing(int i, int b) const { return datum_.pairing(Coweight::unit(dim(), b), i); }

CoverElement TorusCover::identity() const {
  CoverElement e;
  e.coords.assign(static_cast<size_t>(dim()), field_.one());
  return e;
}

CoverElement TorusCover::central(int zeta) const {
  CoverElement e = identity();
  e.zeta = mod_n(zeta, n());
  return e;
}

CoverElement TorusCover::generator(int b, const LocalElement& s) const {
  if (b < 0 || b >= dim()) throw InvalidInput("generator index out of range");
  CoverElement e = identity();
  e.coords[b] = checked(s);
  return e;
}

CoverElement TorusCover::mul(const CoverElement& x, const CoverElement& y) const {
  size_t d = static_cast<size_t>(dim());
  if (x.coords.size() != d || y.coords.size() != d) throw InvalidInput("cover elements from different models");
  CoverElement r;
  int64_t z = x.zeta + y.zeta;
  r.coords.reserve(d);
  for (size_t i = 0; i < d; ++i) {
    r.coords.push_back(checked(field_.mul(x.coords[i], y.coords[i])));
    z += form_.q(static_cast<int>(i)) * field_.hilbert(x.coords[i], y.coords[i]);
    for (size_t j = 0; j < i; ++j) z += gram_[i][j] * field_.hilbert(x.coords[i], y.coords[j]);
  }
  r.zeta = mod_n(z, n());
  return r;
}

CoverElement TorusCover::inv(const CoverElement& x) const {
  CoverElement y = identity();
  for (size_t i = 0; i < y.coords.size(); ++i) y.coords[i] = checked(field_.inv(x.coords.at(i)));
  CoverElement p = mul(x, y);
  y.zeta = mod_n(-static_cast<int64_t>(p.zeta), n());
  return y;
}

CoverElement TorusCover::commutator(const CoverElement& x, const CoverElement& y) const {
  return mul(mul(x, y), inv(mul(y, x)));
}

CoverElement TorusCover::conjugate(const CoverElement& g, const CoverElement& x) const {
  return mul(mul(g, x), inv(g));
}

CoverElement TorusCover::s_auto(int i, const CoverElement& x, bool inverse) const {
  if (i < 0 || i >= rank()) throw InvalidInput("simple index out of range");
  CoverElement r = central(x.zeta);
  for (int b = 0; b < dim(); ++b) {
    const LocalElement& s = x.coords.at(static_cast<size_t>(b));
    int64_t k = root_pairing(i, b);
    CoverElement hb = generator(b, s);
    CoverElement img = inverse ? mul(hb, generator(i, field_.pow(s, -k)))
                               : mul(hb, inv(generator(i, field_.pow(s, k))));
    r = mul(r, img);
  }
  return r;
}

CoverElement TorusCover::s_word(const WeylElement& w, const CoverElement& x) const {
  CoverElement r = x;
  const auto& word = w.word();
  for (auto it = word.rbegin(); it != word.rend(); ++it) r = s_auto(*it, r, false);
  return r;
}

CoverElement TorusCover::random_element(std::mt19937_64& rng, int64_t valuation_range) const {
  std::uniform_int_distribution<int64_t> val(-valuation_range, valuation_range);
  std::uniform_int_distribution<int64_t> unit(1, field_.q() - 1);
  std::uniform_int_distribution<int64_t> digit(0, field_.q() - 1);
  std::uniform_int_distribution<int> zeta(0, n() - 1);
  CoverElement e;
  e.zeta = zeta(rng);
  for (int b = 0; b < dim(); ++b) {
    int64_t v = val(rng);
    int64_t u = unit(rng);
    std::vector<int64_t> tail;
    for (int k = 1; k < field_.precision(); ++k) tail.push_back(digit(rng));
    e.coords.push_back(field_.make(v, u, tail));
  }
  return e;
}

std::string TorusCover::str(const CoverElement& x) const {
  std::string out = "zeta^" + std::to_string(x.zeta);
  for (size_t b = 0; b < x.coords.size(); ++b) out += " h" + std::to_string(b) + "(" + local_str(x.coords[b]) + ")";
  return out;
}

bool CoverReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CoverCheck& c) { return c.ok(); });
}

namespace {

class Checker {
 public:
  Checker(const TorusCover& cover, std::string name) : cover_(cover) { check_.name = std::move(name); }
  void expect(const CoverElement& lhs, const CoverElement& rhs, const std::string& what) {
    ++check_.checked;
    if (lhs == rhs || check_.counterexamples.size() >= 5) return;
    check_.counterexamples.push_back(what + ": " + cover_.str(lhs) + " != " + cover_.str(rhs));
  }
  CoverCheck take() { return std::move(check_); }

 private:
  const TorusCover& cover_;
  CoverCheck check_;
};

}  // namespace

CoverReport verify_torus_cover(const CartanMatrix& cartan, int64_t q, int n, uint64_t seed, int samples) {
  check_field_assumption(q, n);
  MetaplecticDatum met = MetaplecticDatum::plain(cartan, n);
  TorusCover cover(met.datum(), met.form(), LocalField(q, n));
  const LocalField& f = cover.field();
  const RootDatum& d = cover.datum();
  int dim = cover.dim(), rank = cover.rank();
  std::mt19937_64 rng(seed);
  CoverReport rep;
  rep.type = cartan.str();
  rep.q = q;
  rep.n = n;

  auto rand_local = [&](int64_t range) { return cover.random_element(rng, range).coords[0]; };
  std::vector<LocalElement> scalars{f.one(), f.make(0, f.residue_field().minus_one()), f.uniformizer(),
                                    f.inv(f.uniformizer()), f.make(0, f.residue_field().primitive())};
  for (int k = 0; k < samples; ++k) scalars.push_back(rand_local(3));
  std::vector<CoverElement> elements;
  for (int k = 0; k < samples; ++k) elements.push_back(cover.random_element(rng, 2));
  LocalElement minus_one = f.make(0, f.residue_field().minus_one());
  auto h = [&](int b, const LocalElement& s) { return cover.generator(b, s); };
  auto sym = [&](const LocalElement& s, const LocalElement& t, int64_t e) { return cover.central(static_cast<int>(e % n * f.hilbert(s, t) % n)); };

  {
    Checker c(cover, "identity and inverses");
    CoverElement e = cover.identity();
    for (const auto& x : elements) {
      c.expect(cover.mul(e, x), x, "1 x");
      c.expect(cover.mul(x, e), x, "x 1");
      c.expect(cover.mul(x, cover.inv(x)), e, "x x^-1");
      c.expect(cover.mul(cover.inv(x), x), e, "x^-1 x");
    }
    rep.checks.push_back(c.take());
  }
  {
    Checker c(cover, "associativity");
    // Exhaustive over valuations {0, 1} and all unit residues when the set is small.
    std::vector<CoverElement> small{cover.identity()};
    for (int b = 0; b < dim; ++b) {
      std::vector<CoverElement> next;
      for (const auto& x : small)
        for (int64_t v = 0; v <= 1; ++v)
          for (int64_t u = 1; u < q; ++u) {
            CoverElement y = x;
            y.coords[b] = f.make(v, u);
            next.push_back(y);
          }
      small = std::move(next);
      if (small.size() > 64) break;
    }
    if (small.size() <= 64 && static_cast<int>(small[0].coords.size()) == dim) {
      for (const auto& x : small)
        for (const auto& y : small) {
          CoverElement xy = cover.mul(x, y);
          for (const auto& z : small) c.expect(cover.mul(xy, z), cover.mul(x, cover.mul(y, z)), "(xy)z");
        }
    }
    for (size_t k = 0; k + 2 < elements.size(); ++k) {
      const auto &x = elements[k], &y = elements[k + 1], &z = elements[k + 2];
      c.expect(cover.mul(cover.mul(x, y), z), cover.mul(x, cover.mul(y, z)), "(xy)z");
    }
    rep.checks.push_back(c.take());
  }
  {
    Checker c(cover, "generator relations");
    for (int b = 0; b < dim; ++b)
      for (size_t k = 0; k + 1 < scalars.size(); ++k) {
        const auto &s = scalars[k], &t = scalars[k + 1];
        int64_t qb = met.form().q(b);
        c.expect(cover.mul(h(b, s), h(b, t)), cover.mul(sym(s, t, qb), h(b, f.mul(s, t))), "h_b(s) h_b(t)");
        c.expect(cover.inv(h(b, s)), cover.mul(h(b, f.inv(s)), sym(s, s, qb)), "h_b(s)^-1");
        for (int a = 0; a < dim; ++a) {
          int64_t bab = met.form().bilinear(Coweight::unit(dim, a), Coweight::unit(dim, b));
          c.expect(cover.commutator(h(a, s), h(b, t)), sym(s, t, ((bab % n) + n) % n), "[h_a(s), h_b(t)]");
        }
      }
    rep.checks.push_back(c.take());
  }
  {
    Checker c(cover, "s_a homomorphism");
    for (int i = 0; i < rank; ++i) {
      for (const auto& s : scalars) {
        c.expect(cover.s_auto(i, h(i, s), true), h(i, f.inv(s)), "s_a^-1 h_a(s)");
        for (int b = 0; b < dim; ++b) {
          int64_t k = d.pairing(Coweight::unit(dim, b), i);
          c.expect(cover.s_auto(i, h(b, s), false), cover.mul(h(i, f.pow(s, -k)), h(b, s)), "s_a h_b(s)");
        }
      }
      for (int z = 0; z < n; ++z) {
        c.expect(cover.s_auto(i, cover.central(z), true), cover.central(z), "s_a^-1 zeta");
        c.expect(cover.s_auto(i, cover.central(z), false), cover.central(z), "s_a zeta");
      }
      for (size_t k = 0; k + 1 < elements.size(); ++k) {
        const auto &x = elements[k], &y = elements[k + 1];
        for (bool dir : {true, false})
          c.expect(cover.s_auto(i, cover.mul(x, y), dir), cover.mul(cover.s_auto(i, x, dir), cover.s_auto(i, y, dir)),
                   dir ? "s_a^-1(xy)" : "s_a(xy)");
        c.expect(cover.s_auto(i, cover.s_auto(i, x, true), false), x, "s_a s_a^-1 x");
        c.expect(cover.s_auto(i, cover.s_auto(i, x, false), true), x, "s_a^-1 s_a x");
      }
    }
    rep.checks.push_back(c.take());
  }
  {
    Checker c(cover, "s_a squared");
    for (int i = 0; i < rank; ++i) {
      CoverElement g = h(i, minus_one);
      std::vector<CoverElement> xs = elements;
      for (int b = 0; b < dim; ++b)
        for (const auto& s : scalars) xs.push_back(h(b, s));
      for (const auto& x : xs) {
        CoverElement ad = cover.conjugate(g, x);
        c.expect(cover.s_auto(i, cover.s_auto(i, x, false), false), ad, "s_a^2 x");
        c.expect(cover.s_auto(i, cover.s_auto(i, x, true), true), ad, "s_a^-2 x");
      }
    }
    rep.checks.push_back(c.take());
  }
  {
    Checker c(cover, "integral relations");
    for (int a = 0; a < rank; ++a)
      for (int b = 0; b < rank; ++b) {
        CoverElement ha = h(a, minus_one), hb = h(b, minus_one);
        CoverElement lhs = cover.mul(cover.mul(cover.inv(hb), ha), hb);
        int64_t ba = d.pairing(Coweight::unit(dim, a), b);
        CoverElement rhs = ba % 2 == 0 ? ha : cover.mul(ha, cover.mul(hb, hb));
        c.expect(lhs, rhs, "h_b(-1)^-1 h_a(-1) h_b(-1)");
      }
    rep.checks.push_back(c.take());
  }
  {
    Checker c(cover, "s_a on the integral subgroup");
    std::vector<CoverElement> gens;
    for (int a = 0; a < rank; ++a) gens.push_back(h(a, minus_one));
    auto key = [&](const CoverElement& x) { return cover.str(x); };
    std::set<std::string> seen{key(cover.identity())};
    std::vector<CoverElement> group{cover.identity()};
    for (size_t k = 0; k < group.size(); ++k)
      for (const auto& g : gens) {
        CoverElement y = cover.mul(group[k], g);
        if (seen.insert(key(y)).second) group.push_back(y);
      }
    for (int i = 0; i < rank; ++i) {
      for (int b = 0; b < rank; ++b) {
        int64_t k = d.pairing(Coweight::unit(dim, b), i);
        CoverElement hb = h(b, minus_one);
        CoverElement expect = k % 2 == 0 ? hb : cover.mul(hb, h(i, minus_one));
        c.expect(cover.s_auto(i, hb, true), expect, "s_a^-1 h_b(-1)");
        int64_t e = met.form().bilinear(Coweight::unit(dim, i), Coweight::unit(dim, b)) * k;
        c.expect(cover.s_auto(i, cover.s_auto(i, hb, true), true),
                 cover.mul(hb, sym(minus_one, minus_one, ((e % n) + n) % n)), "s_a^-2 h_b(-1)");
      }
      for (const auto& x : group) {
        for (bool dir : {true, false}) {
          CoverElement y = cover.s_auto(i, x, dir);
          if (!seen.count(key(y))) c.expect(y, x, "s_a preserves the integral subgroup");
          CoverElement y4 = x;
          for (int r = 0; r < 4; ++r) y4 = cover.s_auto(i, y4, dir);
          c.expect(y4, x, dir ? "s_a^-4 x" : "s_a^4 x");
        }
      }
    }
    rep.checks.push_back(c.take());
  }
  {
    const CartanMatrix& a = d.cartan();
    for (int i = 0; i < rank; ++i)
      for (int j = i + 1; j < rank; ++j) {
        int m = a.braid_order(i, j);
        if (m <= 0) continue;
        int hval = m == 2 ? 2 : m == 3 ? 3 : m == 4 ? 4 : 6;
        Checker c(cover, "braid relations h=" + std::to_string(hval));
        for (bool dir : {true, false})
          for (int g = 0; g < dim; ++g)
            for (const auto& t : scalars) {
              CoverElement x = h(g, t), y = x;
              for (int r = 0; r < m; ++r) {
                x = cover.s_auto(r % 2 == 0 ? i : j, x, dir);
                y = cover.s_auto(r % 2 == 0 ? j : i, y, dir);
              }
              c.expect(x, y, dir ? "braid of s^-1" : "braid of s");
            }
        rep.checks.push_back(c.take());
      }
  }
  {
    const CartanMatrix& a = d.cartan();
    WeylGroup weyl_group(d);
    Checker fixed(cover, "w fixes a"), negated(cover, "w negates a"), swapped(cover, "w sends a to b");
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) {
        if (i == j) continue;
        int m = a.braid_order(i, j);
        if (m <= 0) continue;
        std::set<std::vector<int>> words;
        for (int len = 0; len <= m; ++len)
          for (int start : {i, j}) {
            std::vector<int> wd;
            for (int r = 0; r < len; ++r) wd.push_back(r % 2 == 0 ? start : (start == i ? j : i));
            words.insert(weyl_group.from_word(wd).word());
          }
        for (const auto& wd : words) {
          WeylElement w = weyl_group.from_word(wd);
          Coweight img = w.act(d.coroot(i));
          for (const auto& s : scalars) {
            CoverElement lhs = cover.s_word(w, h(i, s));
            if (img == d.coroot(i)) fixed.expect(lhs, h(i, s), "s_w h_a(s)");
            else if (img == -d.coroot(i)) negated.expect(lhs, h(i, f.inv(s)), "s_w h_a(s)");
            else if (img == d.coroot(j)) swapped.expect(lhs, h(j, s), "s_w h_a(s)");
          }
        }
      }
    rep.checks.push_back(fixed.take());
    rep.checks.push_back(negated.take());
    rep.checks.push_back(swapped.take());
  }
  return rep;
}

}  // namespace kmw
