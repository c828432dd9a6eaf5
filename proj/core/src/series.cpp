#include "kmw/series.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "kmw/error.hpp"
#include "kmw/parallel.hpp"
#include "kmw/weyl.hpp"

namespace kmw {
namespace {

constexpr size_t kMaxApexes = 16;
constexpr size_t kParallelThreshold = 20000;

bool is_nonneg_combination(const Coweight& d, int rank) {
  for (int i = 0; i < d.dim(); ++i) {
    if (i < rank && d[i] < 0) return false;
    if (i >= rank && d[i] != 0) return false;
  }
  return true;
}

std::vector<LatticeSeries::Term> merge_terms(const std::vector<LatticeSeries::Term>& a,
                                             const std::vector<LatticeSeries::Term>& b, bool negate_b) {
  std::vector<LatticeSeries::Term> out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, negate_b ? -b[j].second : b[j].second);
      ++j;
    } else {
      Coeff s = negate_b ? a[i].second - b[j].second : a[i].second + b[j].second;
      if (!s.is_zero()) out.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

std::string render_coweight(const Coweight& mu) { return "e" + mu.str(); }

}  // namespace

LatticeSeries::LatticeSeries(int dim, int rank, int n) : dim_(dim), rank_(rank), n_(n) {
  if (rank < 0 || rank > dim || dim > kMaxDim) throw InvalidInput("invalid lattice series dimensions");
  Coeff check(n);
  (void)check;
}

LatticeSeries LatticeSeries::monomial(int dim, int rank, const Coweight& mu, const Coeff& c) {
  if (mu.dim() != dim) throw InvalidInput("coweight dimension mismatch");
  LatticeSeries s(dim, rank, c.n());
  if (!c.is_zero()) s.terms_.emplace_back(mu, c);
  return s;
}

LatticeSeries LatticeSeries::constant(int dim, int rank, const Coeff& c) {
  return monomial(dim, rank, Coweight(dim), c);
}

LatticeSeries LatticeSeries::from_terms(int dim, int rank, int n, std::vector<Term> terms) {
  LatticeSeries s(dim, rank, n);
  std::map<Coweight, Coeff> acc;
  for (auto& [mu, c] : terms) {
    if (mu.dim() != dim) throw InvalidInput("coweight dimension mismatch");
    auto it = acc.find(mu);
    if (it == acc.end()) acc.emplace(mu, std::move(c));
    else it->second += c;
  }
  for (auto& [mu, c] : acc)
    if (!c.is_zero()) {
      if (c.has_gauss()) s.n_ = c.n();
      s.terms_.emplace_back(mu, std::move(c));
    }
  return s;
}

bool LatticeSeries::leq(const Coweight& y, const Coweight& z) const { return is_nonneg_combination(z - y, rank_); }

int64_t LatticeSeries::top_height() const {
  if (mode_ == Mode::Truncated) return top_;
  int64_t t = kNoFloor;
  for (const auto& [mu, c] : terms_) t = std::max(t, height(mu));
  return t;
}

void LatticeSeries::normalize_apexes() {
  std::sort(apexes_.begin(), apexes_.end());
  apexes_.erase(std::unique(apexes_.begin(), apexes_.end()), apexes_.end());
  if (apexes_.size() > 4 * kMaxApexes) join_apexes(apexes_);
  std::vector<Coweight> keep;
  for (size_t i = 0; i < apexes_.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < apexes_.size() && !dominated; ++j)
      if (i != j && leq(apexes_[i], apexes_[j])) dominated = true;
    if (!dominated) keep.push_back(apexes_[i]);
  }
  if (keep.size() > kMaxApexes) join_apexes(keep);
  apexes_ = std::move(keep);
}

void LatticeSeries::join_apexes(std::vector<Coweight>& apexes) const {
  // Apexes sharing derivation coordinates are replaced by their coordinatewise join.
  std::map<std::vector<int64_t>, Coweight> joins;
  for (const auto& a : apexes) {
    std::vector<int64_t> tail;
    for (int i = rank_; i < dim_; ++i) tail.push_back(a[i]);
    auto it = joins.find(tail);
    if (it == joins.end()) {
      joins.emplace(tail, a);
    } else {
      for (int i = 0; i < rank_; ++i) it->second[i] = std::max(it->second[i], a[i]);
    }
  }
  apexes.clear();
  for (auto& [t, a] : joins) apexes.push_back(a);
}

void LatticeSeries::drop_below_floor() {
  if (mode_ != Mode::Truncated) return;
  std::erase_if(terms_, [&](const Term& t) { return height(t.first) < floor_; });
}

void LatticeSeries::apply_weight_cap() {
  if (!weight_cap_) return;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& [mu, c] : terms_) {
    if (!c.is_zero() && c.min_weight2() < 0)
      throw InvalidInput("weight cap applied to a coefficient with negative weight: " + c.str());
    Coeff t = c.truncated(*weight_cap_);
    if (!t.is_zero()) out.emplace_back(mu, std::move(t));
  }
  terms_ = std::move(out);
}

LatticeSeries LatticeSeries::truncated(int64_t floor) const {
  if (mode_ == Mode::Truncated) return with_floor(floor);
  LatticeSeries s = *this;
  int64_t top = top_height();
  s.mode_ = Mode::Truncated;
  s.floor_ = floor;
  s.apexes_.clear();
  for (const auto& [mu, c] : terms_) s.apexes_.push_back(mu);
  s.normalize_apexes();
  s.top_ = terms_.empty() ? floor - 1 : top;
  s.drop_below_floor();
  return s;
}

LatticeSeries LatticeSeries::with_floor(int64_t floor) const {
  if (mode_ == Mode::Exact) return truncated(floor);
  LatticeSeries s = *this;
  s.floor_ = std::max(floor_, floor);
  s.drop_below_floor();
  return s;
}

LatticeSeries LatticeSeries::with_weight_cap(int64_t cap) const {
  LatticeSeries s = *this;
  s.weight_cap_ = weight_cap_ ? std::min(*weight_cap_, cap) : cap;
  s.apply_weight_cap();
  return s;
}

LatticeSeries LatticeSeries::restricted(int64_t floor) const {
  LatticeSeries s = *this;
  std::erase_if(s.terms_, [&](const Term& t) { return height(t.first) < floor; });
  return s;
}

Coeff LatticeSeries::coefficient(const Coweight& mu) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), mu,
                             [](const Term& t, const Coweight& m) { return t.first < m; });
  if (it != terms_.end() && it->first == mu) return it->second;
  if (mode_ == Mode::Truncated && height(mu) < floor_)
    throw InvalidInput("coefficient requested below the truncation floor");
  return Coeff(n_);
}

bool LatticeSeries::support_in_cones() const {
  if (mode_ == Mode::Exact) return true;
  for (const auto& [mu, c] : terms_) {
    bool ok = false;
    for (const auto& a : apexes_)
      if (leq(mu, a)) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

void LatticeSeries::check_compatible(const LatticeSeries& o) const {
  if (dim_ != o.dim_ || rank_ != o.rank_) throw InvalidInput("lattice series over different lattices");
}

LatticeSeries LatticeSeries::operator-() const {
  LatticeSeries s = *this;
  for (auto& t : s.terms_) t.second = -t.second;
  return s;
}

LatticeSeries& LatticeSeries::operator+=(const LatticeSeries& o) {
  check_compatible(o);
  if (o.terms_.empty() && o.mode_ == Mode::Exact) return *this;
  bool trunc = mode_ == Mode::Truncated || o.mode_ == Mode::Truncated;
  if (trunc) {
    LatticeSeries a = mode_ == Mode::Truncated ? *this : truncated(o.floor_);
    LatticeSeries b = o.mode_ == Mode::Truncated ? o : o.truncated(floor_);
    int64_t fl = std::max(a.floor_, b.floor_);
    terms_ = merge_terms(a.terms_, b.terms_, false);
    mode_ = Mode::Truncated;
    floor_ = fl;
    top_ = std::max(a.top_, b.top_);
    apexes_ = a.apexes_;
    apexes_.insert(apexes_.end(), b.apexes_.begin(), b.apexes_.end());
    normalize_apexes();
    drop_below_floor();
  } else {
    terms_ = merge_terms(terms_, o.terms_, false);
  }
  if (o.n_ != 1) n_ = o.n_;
  if (o.weight_cap_) weight_cap_ = weight_cap_ ? std::min(*weight_cap_, *o.weight_cap_) : *o.weight_cap_;
  apply_weight_cap();
  return *this;
}

LatticeSeries& LatticeSeries::operator-=(const LatticeSeries& o) { return *this += -o; }

LatticeSeries operator*(const LatticeSeries& a, const LatticeSeries& b) {
  a.check_compatible(b);
  using Mode = LatticeSeries::Mode;
  LatticeSeries r(a.dim_, a.rank_, a.n_ != 1 ? a.n_ : b.n_);
  if (a.weight_cap_ || b.weight_cap_) {
    int64_t ca = a.weight_cap_.value_or(INT64_MAX), cb = b.weight_cap_.value_or(INT64_MAX);
    r.weight_cap_ = std::min(ca, cb);
  }
  bool trunc = a.mode_ == Mode::Truncated || b.mode_ == Mode::Truncated;
  int64_t floor = LatticeSeries::kNoFloor;
  if (trunc) {
    int64_t ta = a.top_height(), tb = b.top_height();
    int64_t fa = a.mode_ == Mode::Truncated ? a.floor_ : LatticeSeries::kNoFloor;
    int64_t fb = b.mode_ == Mode::Truncated ? b.floor_ : LatticeSeries::kNoFloor;
    if (a.mode_ == Mode::Exact && a.terms_.empty()) return a;
    if (b.mode_ == Mode::Exact && b.terms_.empty()) return b;
    floor = std::max(fa + tb, fb + ta);
    r.mode_ = Mode::Truncated;
    r.floor_ = floor;
    r.top_ = ta + tb;
    std::vector<Coweight> aa = a.mode_ == Mode::Truncated ? a.apexes_ : a.truncated(fa).apexes_;
    std::vector<Coweight> bb = b.mode_ == Mode::Truncated ? b.apexes_ : b.truncated(fb).apexes_;
    for (const auto& x : aa)
      for (const auto& y : bb) r.apexes_.push_back(x + y);
    r.normalize_apexes();
  }
  if (a.terms_.empty() || b.terms_.empty()) return r;

  // Inner factor sorted by height, highest first, so the floor cuts a prefix.
  std::vector<const LatticeSeries::Term*> inner;
  inner.reserve(b.terms_.size());
  for (const auto& t : b.terms_) inner.push_back(&t);
  std::vector<int64_t> inner_h(b.terms_.size());
  std::stable_sort(inner.begin(), inner.end(),
                   [&](const auto* x, const auto* y) { return b.height(x->first) > b.height(y->first); });
  for (size_t k = 0; k < inner.size(); ++k) inner_h[k] = b.height(inner[k]->first);

  auto multiply_range = [&](size_t lo, size_t hi, std::unordered_map<Coweight, Coeff, CoweightHash>& acc) {
    for (size_t i = lo; i < hi; ++i) {
      const auto& [mu, ca] = a.terms_[i];
      int64_t ha = a.height(mu);
      for (size_t k = 0; k < inner.size(); ++k) {
        if (trunc && ha + inner_h[k] < floor) break;
        Coeff p = ca * inner[k]->second;
        if (r.weight_cap_) p = p.truncated(*r.weight_cap_);
        if (p.is_zero()) continue;
        Coweight nu = mu + inner[k]->first;
        auto it = acc.find(nu);
        if (it == acc.end()) acc.emplace(nu, std::move(p));
        else it->second += p;
      }
    }
  };

  std::unordered_map<Coweight, Coeff, CoweightHash> acc;
  size_t work = a.terms_.size() * b.terms_.size();
  int threads = thread_count();
  if (threads > 1 && work >= kParallelThreshold && a.terms_.size() >= 2) {
    size_t chunks = std::min<size_t>(a.terms_.size(), static_cast<size_t>(threads) * 4);
    std::vector<std::unordered_map<Coweight, Coeff, CoweightHash>> parts(chunks);
    parallel_for(chunks, [&](size_t c) {
      size_t lo = a.terms_.size() * c / chunks, hi = a.terms_.size() * (c + 1) / chunks;
      multiply_range(lo, hi, parts[c]);
    });
    for (auto& part : parts)
      for (auto& [mu, c] : part) {
        auto it = acc.find(mu);
        if (it == acc.end()) acc.emplace(mu, std::move(c));
        else it->second += c;
      }
  } else {
    multiply_range(0, a.terms_.size(), acc);
  }
  r.terms_.reserve(acc.size());
  for (auto& [mu, c] : acc)
    if (!c.is_zero()) r.terms_.emplace_back(mu, std::move(c));
  std::sort(r.terms_.begin(), r.terms_.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return r;
}

LatticeSeries& LatticeSeries::operator*=(const LatticeSeries& o) {
  *this = *this * o;
  return *this;
}

LatticeSeries LatticeSeries::scaled(const Coeff& c) const {
  LatticeSeries s = *this;
  if (c.has_gauss()) s.n_ = c.n();
  std::vector<Term> out;
  for (const auto& [mu, x] : terms_) {
    Coeff p = x * c;
    if (weight_cap_) p = p.truncated(*weight_cap_);
    if (!p.is_zero()) out.emplace_back(mu, std::move(p));
  }
  s.terms_ = std::move(out);
  return s;
}

LatticeSeries LatticeSeries::scaled(const Rational& c) const {
  LatticeSeries s = *this;
  if (c.is_zero()) {
    s.terms_.clear();
    return s;
  }
  for (auto& t : s.terms_) t.second *= c;
  return s;
}

LatticeSeries LatticeSeries::shifted(const Coweight& mu) const {
  LatticeSeries s = *this;
  for (auto& t : s.terms_) t.first += mu;
  if (mode_ == Mode::Truncated) {
    int64_t h = height(mu);
    s.floor_ += h;
    s.top_ += h;
    for (auto& a : s.apexes_) a += mu;
  }
  return s;
}

LatticeSeries LatticeSeries::relabel(const WeylElement& w) const {
  if (w.is_identity()) return *this;
  if (mode_ != Mode::Exact)
    throw InvalidInput("relabeling a truncated series does not preserve cone containment");
  if (w.dim() != dim_) throw InvalidInput("Weyl element acts on a different lattice");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [mu, c] : terms_) out.emplace_back(w.act(mu), c);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  LatticeSeries s = *this;
  s.terms_ = std::move(out);
  return s;
}

LatticeSeries LatticeSeries::constant_term(const Coweight& c) const {
  if (c.dim() != dim_ || c.is_zero()) throw InvalidInput("constant term needs a nonzero imaginary coweight");
  int p = 0;
  while (c[p] == 0) ++p;
  LatticeSeries s = *this;
  s.terms_.clear();
  for (const auto& [mu, x] : terms_) {
    if (mu[p] % c[p] != 0) continue;
    int64_t t = mu[p] / c[p];
    if (mu == t * c) s.terms_.emplace_back(mu, x);
  }
  return s;
}

bool LatticeSeries::agree(const LatticeSeries& a, const LatticeSeries& b) { return differences(a, b).empty(); }

std::vector<Coweight> LatticeSeries::differences(const LatticeSeries& a, const LatticeSeries& b) {
  a.check_compatible(b);
  int64_t fl = std::max(a.mode_ == Mode::Truncated ? a.floor_ : kNoFloor,
                        b.mode_ == Mode::Truncated ? b.floor_ : kNoFloor);
  std::optional<int64_t> cap;
  if (a.weight_cap_ || b.weight_cap_)
    cap = std::min(a.weight_cap_.value_or(INT64_MAX), b.weight_cap_.value_or(INT64_MAX));
  std::map<Coweight, std::pair<Coeff, Coeff>> cmp;
  for (const auto& [mu, c] : a.terms_)
    if (a.height(mu) >= fl) cmp[mu].first = cap ? c.truncated(*cap) : c;
  for (const auto& [mu, c] : b.terms_)
    if (b.height(mu) >= fl) cmp[mu].second = cap ? c.truncated(*cap) : c;
  std::vector<Coweight> out;
  for (const auto& [mu, pr] : cmp)
    if (!(pr.first == pr.second)) out.push_back(mu);
  return out;
}

std::string LatticeSeries::str() const {
  std::vector<const Term*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(), [&](const Term* x, const Term* y) {
    int64_t hx = height(x->first), hy = height(y->first);
    if (hx != hy) return hx > hy;
    return y->first < x->first;
  });
  std::string out;
  for (const Term* t : order) {
    const Coeff& c = t->second;
    std::string body;
    bool neg = false;
    if (c.terms().size() == 1) {
      const auto& [key, q] = c.terms()[0];
      neg = q.sign() < 0;
      Coeff abs = neg ? -c : c;
      std::string cs = abs.str();
      body = (cs == "1" ? "" : cs + "*") + render_coweight(t->first);
    } else {
      body = "(" + c.str() + ")*" + render_coweight(t->first);
    }
    if (out.empty()) out = (neg ? "-" : "") + body;
    else out += (neg ? " - " : " + ") + body;
  }
  if (out.empty()) out = "0";
  if (mode_ == Mode::Truncated) out += " + O(height < " + std::to_string(floor_) + ")";
  return out;
}

std::string to_string(Atom a) {
  switch (a) {
    case Atom::B: return "b";
    case Atom::C: return "c";
    case Atom::CFlat: return "cflat";
  }
  return "?";
}

LatticeSeries expand_atom(Atom kind, const Coweight& beta, int rank, int64_t floor, int n) {
  int dim = beta.dim();
  bool pos = !beta.is_zero() && is_nonneg_combination(beta, rank);
  bool neg = !beta.is_zero() && is_nonneg_combination(-beta, rank);
  if (!pos && !neg) throw InvalidInput("atom expansion needs a positive or negative coroot combination, got " + beta.str());
  Coeff one = Coeff::scalar(Rational(1), n);
  Coeff v = Coeff::v_power(1, n);
  Coeff one_minus_v = one - v;
  Coeff v_minus_one = v - one;
  std::vector<LatticeSeries::Term> terms;
  int64_t h = beta.prefix_sum(rank);
  auto add = [&](int64_t k, const Coeff& c) {
    terms.emplace_back(k * beta, c);
  };
  if (pos) {
    int64_t kmax = floor > 0 ? -1 : (-floor) / h;
    switch (kind) {
      case Atom::B:
        for (int64_t k = 1; k <= std::max<int64_t>(kmax, 1); ++k) add(-k, one_minus_v);
        break;
      case Atom::C:
        add(0, v);
        for (int64_t k = 1; k <= kmax; ++k) add(-k, v_minus_one);
        break;
      case Atom::CFlat:
        add(-1, -one);
        for (int64_t k = 2; k <= kmax; ++k) add(-k, v_minus_one);
        break;
    }
  } else {
    int64_t kmax = floor > 0 ? -1 : (-floor) / (-h);
    switch (kind) {
      case Atom::B:
        for (int64_t k = 0; k <= std::max<int64_t>(kmax, 0); ++k) add(k, v_minus_one);
        break;
      case Atom::C:
        add(0, one);
        for (int64_t k = 1; k <= kmax; ++k) add(k, one_minus_v);
        break;
      case Atom::CFlat:
        add(-1, -v);
        for (int64_t k = 0; k <= kmax; ++k) add(k, one_minus_v);
        break;
    }
  }
  // The leading term is always present, so truncation records the true top.
  return LatticeSeries::from_terms(dim, rank, n, std::move(terms)).truncated(floor);
}

LatticeSeries geometric(const Coeff& c, const Coweight& beta, int rank, int64_t floor, int n) {
  if (beta.is_zero() || !is_nonneg_combination(-beta, rank))
    throw InvalidInput("geometric expansion needs a negative coroot combination, got " + beta.str());
  int dim = beta.dim();
  int64_t h = -beta.prefix_sum(rank);
  int64_t kmax = floor > 0 ? -1 : (-floor) / h;
  std::vector<LatticeSeries::Term> terms;
  Coeff p = Coeff::scalar(Rational(1), n);
  for (int64_t k = 0; k <= std::max<int64_t>(kmax, 0); ++k) {
    terms.emplace_back(k * beta, p);
    p *= c;
  }
  return LatticeSeries::from_terms(dim, rank, n, std::move(terms)).truncated(floor);
}

}  // namespace kmw
