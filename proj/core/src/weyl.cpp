#include "kmw/weyl.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

#include "kmw/parallel.hpp"

namespace kmw {
namespace {

int first_sign(const std::vector<int64_t>& m, int dim, int col, int rank) {
  for (int k = 0; k < rank; ++k) {
    int64_t v = m[static_cast<size_t>(k) * dim + col];
    if (v > 0) return 1;
    if (v < 0) return -1;
  }
  return 0;
}

}  // namespace

Coweight WeylElement::act(const Coweight& y) const {
  Coweight out(dim_);
  for (int k = 0; k < dim_; ++k) {
    int64_t s = 0;
    for (int l = 0; l < dim_; ++l) s += m_[static_cast<size_t>(k) * dim_ + l] * y[l];
    if (s > INT32_MAX || s < INT32_MIN) throw ArithmeticFailure("lattice coordinate overflow");
    out[k] = static_cast<int32_t>(s);
  }
  return out;
}

Coweight WeylElement::act_inverse(const Coweight& y) const {
  Coweight out(dim_);
  for (int k = 0; k < dim_; ++k) {
    int64_t s = 0;
    for (int l = 0; l < dim_; ++l) s += inv_[static_cast<size_t>(k) * dim_ + l] * y[l];
    if (s > INT32_MAX || s < INT32_MIN) throw ArithmeticFailure("lattice coordinate overflow");
    out[k] = static_cast<int32_t>(s);
  }
  return out;
}

std::vector<int64_t> WeylElement::act_weight(const std::vector<int64_t>& x) const {
  std::vector<int64_t> out(dim_, 0);
  for (int k = 0; k < dim_; ++k)
    for (int l = 0; l < dim_; ++l) out[k] += inv_[static_cast<size_t>(l) * dim_ + k] * x[l];
  return out;
}

size_t WeylElement::hash() const {
  uint64_t h = 1469598103934665603ull;
  for (auto v : m_) {
    h ^= static_cast<uint64_t>(v);
    h *= 1099511628211ull;
  }
  return static_cast<size_t>(h);
}

WeylGroup::WeylGroup(RootDatum d) : d_(std::move(d)) {}

WeylElement WeylGroup::identity() const {
  WeylElement w;
  int e = d_.dim();
  w.dim_ = e;
  w.m_.assign(static_cast<size_t>(e) * e, 0);
  for (int k = 0; k < e; ++k) w.m_[static_cast<size_t>(k) * e + k] = 1;
  w.inv_ = w.m_;
  return w;
}

void WeylGroup::left_mul(WeylElement& w, int i) const {
  int e = w.dim_;
  const auto& x = d_.root(i);
  std::vector<int64_t> row(e, 0);
  for (int l = 0; l < e; ++l) {
    int64_t s = 0;
    for (int k = 0; k < e; ++k) s += x[k] * w.m_[static_cast<size_t>(k) * e + l];
    row[l] = s;
  }
  for (int l = 0; l < e; ++l) w.m_[static_cast<size_t>(i) * e + l] -= row[l];
  for (int k = 0; k < e; ++k) {
    int64_t f = w.inv_[static_cast<size_t>(k) * e + i];
    if (f == 0) continue;
    for (int l = 0; l < e; ++l) w.inv_[static_cast<size_t>(k) * e + l] -= f * x[l];
  }
}

void WeylGroup::right_mul(WeylElement& w, int i) const {
  int e = w.dim_;
  const auto& x = d_.root(i);
  for (int k = 0; k < e; ++k) {
    int64_t f = w.m_[static_cast<size_t>(k) * e + i];
    if (f == 0) continue;
    for (int l = 0; l < e; ++l) w.m_[static_cast<size_t>(k) * e + l] -= f * x[l];
  }
  std::vector<int64_t> row(e, 0);
  for (int l = 0; l < e; ++l) {
    int64_t s = 0;
    for (int k = 0; k < e; ++k) s += x[k] * w.inv_[static_cast<size_t>(k) * e + l];
    row[l] = s;
  }
  for (int l = 0; l < e; ++l) w.inv_[static_cast<size_t>(i) * e + l] -= row[l];
}

bool WeylGroup::is_right_descent(const WeylElement& w, int i) const {
  return first_sign(w.m_, w.dim_, i, rank()) < 0;
}

bool WeylGroup::is_left_descent(const WeylElement& w, int i) const {
  return first_sign(w.inv_, w.dim_, i, rank()) < 0;
}

void WeylGroup::canonicalize(WeylElement& w) const {
  WeylElement t = w;
  std::vector<int> word;
  for (;;) {
    int found = -1;
    for (int i = 0; i < rank(); ++i)
      if (is_left_descent(t, i)) {
        found = i;
        break;
      }
    if (found < 0) break;
    word.push_back(found);
    left_mul(t, found);
  }
  w.word_ = std::move(word);
}

WeylElement WeylGroup::from_word(const std::vector<int>& word) const {
  WeylElement w = identity();
  for (int i : word) {
    if (i < 0 || i >= rank()) throw InvalidInput("word letter out of range");
    right_mul(w, i);
  }
  canonicalize(w);
  return w;
}

WeylElement WeylGroup::multiply(const WeylElement& a, const WeylElement& b) const {
  std::vector<int> word = a.word_;
  word.insert(word.end(), b.word_.begin(), b.word_.end());
  return from_word(word);
}

WeylElement WeylGroup::inverse(const WeylElement& w) const {
  std::vector<int> word(w.word_.rbegin(), w.word_.rend());
  return from_word(word);
}

std::vector<WeylElement> WeylGroup::enumerate(int max_length, size_t cap) const {
  if (max_length < 0) throw InvalidInput("max_length must be nonnegative");
  std::vector<WeylElement> out;
  std::vector<WeylElement> level{identity()};
  out.push_back(level[0]);
  for (int len = 0; len < max_length && !level.empty(); ++len) {
    std::vector<std::vector<WeylElement>> children(level.size());
    parallel_for(level.size(), [&](size_t idx) {
      const WeylElement& w = level[idx];
      for (int i = 0; i < rank(); ++i) {
        if (is_right_descent(w, i)) continue;
        WeylElement u = w;
        right_mul(u, i);
        u.word_ = w.word_;
        u.word_.push_back(i);
        children[idx].push_back(std::move(u));
      }
    });
    std::unordered_set<WeylElement, WeylElementHash> seen;
    std::vector<WeylElement> next;
    for (auto& group : children)
      for (auto& u : group) {
        if (seen.count(u)) continue;
        seen.insert(u);
        next.push_back(std::move(u));
        if (out.size() + next.size() > cap)
          throw ResourceLimit("Weyl group enumeration exceeded cap", static_cast<long long>(out.size() + next.size()));
      }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

std::vector<Coweight> WeylGroup::inversion_coroots(const std::vector<int>& word) const {
  std::vector<Coweight> out;
  WeylElement w = identity();
  int e = d_.dim();
  for (int k : word) {
    if (k < 0 || k >= rank()) throw InvalidInput("word letter out of range");
    Coweight beta(e);
    for (int r = 0; r < e; ++r) beta[r] = static_cast<int32_t>(w.entry(r, k));
    out.push_back(beta);
    right_mul(w, k);
  }
  return out;
}

std::vector<std::vector<int64_t>> WeylGroup::inversion_roots(const std::vector<int>& word) const {
  std::vector<std::vector<int64_t>> out;
  WeylElement w = identity();
  for (int k : word) {
    if (k < 0 || k >= rank()) throw InvalidInput("word letter out of range");
    out.push_back(w.act_weight(d_.root(k)));
    right_mul(w, k);
  }
  return out;
}

std::vector<int> normalize_word(const CartanMatrix& a, const std::vector<int>& input) {
  int r = a.size();
  for (int i : input)
    if (i < 0 || i >= r) throw InvalidInput("word letter out of range");
  std::vector<int> word = input;
  const size_t kCap = 2'000'000;
  for (;;) {
    std::set<std::vector<int>> seen{word};
    std::deque<std::vector<int>> queue{word};
    bool deleted = false;
    while (!queue.empty() && !deleted) {
      std::vector<int> u = std::move(queue.front());
      queue.pop_front();
      for (size_t p = 0; p + 1 < u.size(); ++p)
        if (u[p] == u[p + 1]) {
          word.assign(u.begin(), u.begin() + static_cast<long>(p));
          word.insert(word.end(), u.begin() + static_cast<long>(p) + 2, u.end());
          deleted = true;
          break;
        }
      if (deleted) break;
      for (size_t p = 0; p + 1 < u.size(); ++p) {
        int i = u[p], j = u[p + 1];
        int m = a.braid_order(i, j);
        if (m == 0 || p + m > u.size()) continue;
        bool alt = true;
        for (int t = 0; t < m && alt; ++t) alt = u[p + t] == (t % 2 == 0 ? i : j);
        if (!alt) continue;
        std::vector<int> v = u;
        for (int t = 0; t < m; ++t) v[p + t] = t % 2 == 0 ? j : i;
        if (seen.insert(v).second) {
          if (seen.size() > kCap) throw ResourceLimit("word rewriting exceeded cap", static_cast<long long>(seen.size()));
          queue.push_back(std::move(v));
        }
      }
    }
    if (!deleted) return *seen.begin();
  }
}

namespace {

std::vector<int64_t> poly_mul(const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
  std::vector<int64_t> c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = checked_add(c[i + j], checked_mul(a[i], b[j]));
  return c;
}

}  // namespace

std::vector<int64_t> finite_poincare(const CartanMatrix& a) {
  int n = a.size();
  if (classify(a).overall() != CartanKind::Finite) throw InvalidInput("finite_poincare needs a finite type");
  if (n == 1) return {1, 1};
  // W(t) = W_J(t) * sum over the orbit of the last fundamental weight.
  int i = n - 1;
  std::map<std::vector<int64_t>, int> len;
  std::vector<int64_t> start(n, 0);
  start[i] = 1;
  len[start] = 0;
  std::vector<std::vector<int64_t>> frontier{start};
  std::vector<int64_t> coset{1};
  for (int l = 0; !frontier.empty(); ++l) {
    std::vector<std::vector<int64_t>> next;
    for (const auto& lam : frontier)
      for (int j = 0; j < n; ++j) {
        if (lam[j] <= 0) continue;
        std::vector<int64_t> mu = lam;
        for (int k = 0; k < n; ++k) mu[k] -= lam[j] * a(k, j);
        if (len.emplace(mu, l + 1).second) next.push_back(mu);
      }
    if (!next.empty()) coset.push_back(static_cast<int64_t>(next.size()));
    frontier = std::move(next);
  }
  std::vector<int> rest;
  for (int k = 0; k < n - 1; ++k) rest.push_back(k);
  std::vector<int64_t> sub{1};
  CartanMatrix ra = a.principal(rest);
  for (const auto& comp : ra.components()) {
    std::vector<int> nodes;
    for (int c : comp) nodes.push_back(rest[c]);
    sub = poly_mul(sub, finite_poincare(a.principal(nodes)));
  }
  return poly_mul(sub, coset);
}

std::vector<int64_t> poincare_series(const CartanMatrix& a, int max_degree) {
  std::vector<int64_t> out;
  if (classify(a).overall() == CartanKind::Finite) {
    out = finite_poincare(a);
  } else {
    WeylGroup w(a);
    auto els = w.enumerate(max_degree);
    out.assign(max_degree + 1, 0);
    for (const auto& e : els) out[e.length()]++;
  }
  if (static_cast<int>(out.size()) > max_degree + 1) out.resize(max_degree + 1);
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

std::vector<int> finite_exponents(const CartanMatrix& a) {
  std::vector<int64_t> f = finite_poincare(a);
  for (int k = 0; k < a.size(); ++k) f = poly_mul(f, {1, -1});
  std::vector<int> exps;
  while (true) {
    while (f.size() > 1 && f.back() == 0) f.pop_back();
    size_t d = 1;
    while (d < f.size() && f[d] == 0) ++d;
    if (d >= f.size()) break;
    // Divide by (1 - t^d).
    std::vector<int64_t> g(f.size(), 0);
    for (size_t j = 0; j < f.size(); ++j) g[j] = f[j] + (j >= d ? g[j - d] : 0);
    for (size_t j = f.size() - d; j < f.size(); ++j)
      if (g[j] != 0) throw ArithmeticFailure("Poincare polynomial does not factor into cyclotomic pieces");
    g.resize(f.size() - d);
    f = std::move(g);
    exps.push_back(static_cast<int>(d) - 1);
  }
  if (f.size() != 1 || f[0] != 1) throw ArithmeticFailure("Poincare factorization left a remainder");
  std::sort(exps.begin(), exps.end());
  return exps;
}

Rank2Polys rank2_fg(int k) {
  if (k < 0) throw InvalidInput("rank2_fg needs k >= 0");
  Rank2Polys out;
  IntPoly f{Rational(1)}, g{Rational(0)};
  for (int s = 0; s < k; ++s) {
    IntPoly g1(std::max(f.size(), g.size()), Rational(0));
    for (size_t i = 0; i < f.size(); ++i) g1[i] += f[i];
    for (size_t i = 0; i < g.size(); ++i) g1[i] -= g[i];
    IntPoly f1(std::max(g1.size() + 1, f.size()), Rational(0));
    for (size_t i = 0; i < g1.size(); ++i) f1[i + 1] += g1[i];
    for (size_t i = 0; i < f.size(); ++i) f1[i] -= f[i];
    f = std::move(f1);
    g = std::move(g1);
  }
  auto trim = [](IntPoly p) {
    while (p.size() > 1 && p.back().is_zero()) p.pop_back();
    return p;
  };
  out.f_rec = trim(f);
  out.g_rec = trim(g);
  auto binom = [](int n, int r) {
    Rational b(1);
    for (int t = 0; t < r; ++t) b = b * Rational(n - t) / Rational(t + 1);
    return b;
  };
  IntPoly gc(std::max(k, 1), Rational(0));
  for (int i = 0; i <= k - 1; ++i) gc[k - 1 - i] += Rational(i % 2 == 0 ? 1 : -1) * binom(2 * k - 1 - i, i);
  IntPoly fc(k + 1, Rational(0));
  for (int j = 0; j <= k; ++j) fc[k - j] += Rational(j % 2 == 0 ? 1 : -1) * binom(2 * k - j, j);
  out.f_closed = trim(fc);
  out.g_closed = trim(gc);
  return out;
}

Rational eval_poly(const IntPoly& p, const Rational& x) {
  Rational s(0);
  for (size_t i = p.size(); i-- > 0;) s = s * x + p[i];
  return s;
}

}  // namespace kmw
